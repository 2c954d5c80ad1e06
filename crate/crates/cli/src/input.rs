//! Reading elements, specs and data from arguments or stdin.

use std::io::Read;

use metabelian::autos::{AutoSpec, GenInnerData, PolyAutoData};
use metabelian::json;
use metabelian::{GroupParams, Result};
use serde_json::Value;

use crate::commands::CliError;

pub const DEFAULT_RANK: usize = 2;
pub const DEFAULT_CLASS: usize = 3;

/// Replaces `-` by the contents of stdin.
pub fn resolve_text(arg: &str) -> std::result::Result<String, CliError> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::usage(format!("cannot read stdin: {e}")))?;
    Ok(s)
}

/// An automorphism argument: JSON, or images separated by `;`.
#[derive(Debug)]
pub enum Input {
    Json(Value),
    Words(Vec<String>),
}

impl Input {
    pub fn read(arg: &str) -> std::result::Result<Input, CliError> {
        let text = resolve_text(arg)?;
        match serde_json::from_str::<Value>(&text) {
            Ok(v) if v.is_object() || v.is_array() => Ok(Input::Json(v)),
            _ => Ok(Input::Words(text.split(';').map(|s| s.trim().to_string()).collect())),
        }
    }

    /// `"lambda"` or `"epsilon"` when this is pair data.
    pub fn pair_kind(&self) -> Option<&'static str> {
        let Input::Json(v) = self else { return None };
        let pairs = v.get("pairs")?.as_array()?;
        let first = pairs.first();
        if first.is_some_and(|p| p.get("epsilon").is_some()) {
            Some("epsilon")
        } else {
            Some("lambda")
        }
    }

    fn images_len(&self) -> Option<usize> {
        match self {
            Input::Words(w) => Some(w.len()),
            Input::Json(Value::Array(xs)) => Some(xs.len()),
            Input::Json(v) => v.get("images").and_then(Value::as_array).map(Vec::len),
        }
    }

    pub fn recorded_params(&self) -> Result<Option<GroupParams>> {
        match self {
            Input::Json(v) if v.is_object() => json::params_from_json(v),
            _ => Ok(None),
        }
    }

    /// Flags first, then the input's own `rank`/`class`, then the number of
    /// images, then the defaults.
    pub fn params(&self, rank: Option<usize>, class: Option<usize>) -> Result<GroupParams> {
        let recorded = self.recorded_params()?;
        let rank = rank.or(recorded.map(|p| p.rank)).or(self.images_len()).unwrap_or(DEFAULT_RANK);
        let class = class.or(recorded.map(|p| p.class)).unwrap_or(DEFAULT_CLASS);
        GroupParams::new(rank, class)
    }

    pub fn spec(&self, params: GroupParams) -> Result<AutoSpec> {
        match self {
            Input::Json(v) => json::spec_from_json(v, params),
            Input::Words(ws) => {
                let refs: Vec<&str> = ws.iter().map(String::as_str).collect();
                AutoSpec::parse(params, &refs)
            }
        }
    }

    pub fn gen_inner(&self, params: GroupParams) -> Result<GenInnerData> {
        match self {
            Input::Json(v) => json::gen_inner_from_json(v, params),
            Input::Words(_) => Err(metabelian::Error::Json("generalized inner data must be JSON".into())),
        }
    }

    pub fn poly(&self, params: GroupParams) -> Result<PolyAutoData> {
        match self {
            Input::Json(v) => json::poly_from_json(v, params),
            Input::Words(_) => Err(metabelian::Error::Json("polynomial data must be JSON".into())),
        }
    }
}

/// An element argument: a word, or an element JSON object.
pub fn element(arg: &str, params: GroupParams) -> Result<metabelian::Element> {
    let text = resolve_text(arg).map_err(|e| metabelian::Error::InvalidInput(e.message))?;
    match serde_json::from_str::<Value>(&text) {
        Ok(v) if v.is_object() => json::element_from_json(&v, params),
        _ => metabelian::Element::parse(&text, params),
    }
}
