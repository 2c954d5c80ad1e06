use metabelian::autos::{compose_gen_inner, invert_gen_inner, invert_ia, is_inner, GenInnerData};
use metabelian::magnus::{kernel_selfcheck, oracle_equal};
use metabelian::normality::{poly_to_gen_inner, synthesize_gen_inner, Synthesis};
use metabelian::{json, random, Element, Error, GroupParams};
use serde_json::{json, Value};

use crate::input::{self, Input, DEFAULT_CLASS, DEFAULT_RANK};
use crate::verify;
use crate::{Cli, Command};

pub struct Outcome {
    pub text: String,
    pub json: Value,
    /// A verification ran and did not pass.
    pub failed: bool,
}

impl Outcome {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Outcome { text: text.into(), json, failed: false }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. }
            | Error::UnknownGenerator { .. }
            | Error::GeneratorOutOfRange { .. }
            | Error::InvalidBasic(_)
            | Error::Json(_) => 2,
            _ => 3,
        };
        CliError { code, message: e.to_string() }
    }
}

type CliResult = std::result::Result<Outcome, CliError>;

fn flag_params(cli: &Cli) -> Result<GroupParams, CliError> {
    Ok(GroupParams::new(cli.rank.unwrap_or(DEFAULT_RANK), cli.class.unwrap_or(DEFAULT_CLASS))?)
}

pub fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Nf { word } => {
            let x = input::element(word, flag_params(cli)?)?;
            Ok(Outcome::ok(x.to_string(), json::element_to_json(&x)))
        }
        Command::Eq { left, right } => {
            let params = flag_params(cli)?;
            let (x, y) = (input::element(left, params)?, input::element(right, params)?);
            let equal = x == y;
            let text = if equal { "equal".to_string() } else { format!("not equal\n  left:  {x}\n  right: {y}") };
            Ok(Outcome::ok(text, json!({ "equal": equal, "left": json::element_to_json(&x), "right": json::element_to_json(&y) })))
        }
        Command::Apply { spec, element } => {
            let spec = Input::read(spec)?;
            let params = spec.params(cli.rank, cli.class)?;
            let f = spec.spec(params)?;
            let x = input::element(element, params)?;
            let y = f.apply(&x)?;
            Ok(Outcome::ok(y.to_string(), json::element_to_json(&y)))
        }
        Command::Compose { g, f } => compose(cli, &Input::read(g)?, &Input::read(f)?),
        Command::Invert { input } => invert(cli, &Input::read(input)?),
        Command::IsInner { spec } => {
            let spec = Input::read(spec)?;
            let params = spec.params(cli.rank, cli.class)?;
            let f = spec.spec(params)?;
            Ok(match is_inner(&f)? {
                Some(u) => Outcome::ok(
                    format!("inner: conjugation by {u}"),
                    json!({ "inner": true, "conjugator": json::element_to_json(&u) }),
                ),
                None => Outcome::ok("not inner", json!({ "inner": false })),
            })
        }
        Command::Synthesize { input } => synthesize(cli, &Input::read(input)?),
        Command::OracleSelftest => oracle_selftest(cli),
        Command::VerifyPaper { suite } => verify::run(suite, cli),
    }
}

fn compose(cli: &Cli, g: &Input, f: &Input) -> CliResult {
    let params = match (cli.rank, cli.class) {
        (Some(_), Some(_)) => g.params(cli.rank, cli.class)?,
        _ => g.recorded_params()?.map_or_else(|| f.params(cli.rank, cli.class), |_| g.params(cli.rank, cli.class))?,
    };
    match (g.pair_kind(), f.pair_kind()) {
        (Some("lambda"), Some("lambda")) => {
            let out = compose_gen_inner(&g.gen_inner(params)?, &f.gen_inner(params)?)?;
            Ok(Outcome::ok(out.to_string(), json::gen_inner_to_json(&out)))
        }
        (None, None) => {
            let out = g.spec(params)?.compose(&f.spec(params)?)?;
            Ok(Outcome::ok(out.to_string(), json::spec_to_json(&out)))
        }
        _ => Err(CliError::usage("compose needs two specs or two generalized inner data sets")),
    }
}

fn invert(cli: &Cli, input: &Input) -> CliResult {
    let params = input.params(cli.rank, cli.class)?;
    match input.pair_kind() {
        Some("lambda") => {
            let out = invert_gen_inner(&input.gen_inner(params)?);
            Ok(Outcome::ok(out.to_string(), json::gen_inner_to_json(&out)))
        }
        Some(_) => Err(CliError::usage("invert accepts a spec or generalized inner data")),
        None => {
            let out = invert_ia(&input.spec(params)?)?;
            Ok(Outcome::ok(out.to_string(), json::spec_to_json(&out)))
        }
    }
}

fn synthesize(cli: &Cli, input: &Input) -> CliResult {
    let params = input.params(cli.rank, cli.class)?;
    let result = match input.pair_kind() {
        Some("epsilon") => poly_to_gen_inner(&input.poly(params)?)?,
        Some(_) => synthesize_gen_inner(&input.gen_inner(params)?.to_spec())?,
        None => synthesize_gen_inner(&input.spec(params)?)?,
    };
    let text = match &result {
        Synthesis::GenInner(g) => format!("generalized inner: {}", describe(g)),
        Synthesis::NotGeneralizedInner(r) => format!(
            "not generalized inner: no correction at layer {} for generator {} (certificate {})",
            r.layer,
            metabelian::words::generator_name(r.witness_generator, params.rank),
            if r.verify() { "verified" } else { "NOT verified" }
        ),
    };
    Ok(Outcome::ok(text, json::synthesis_to_json(&result)))
}

fn describe(g: &GenInnerData) -> String {
    if g.is_empty() {
        "identity".into()
    } else {
        g.to_string()
    }
}

const DEFAULT_ORACLE_SAMPLES: usize = 200;

fn oracle_selftest(cli: &Cli) -> CliResult {
    let params = flag_params(cli)?;
    let report = kernel_selfcheck(params)?;
    let samples = cli.samples.unwrap_or(DEFAULT_ORACLE_SAMPLES);
    let mut rng = random::seeded(cli.seed);
    let mut disagreements = Vec::new();
    for n in 0..samples {
        let w1 = random::word(&mut rng, params.rank, 20);
        // every other pair is equal by construction
        let w2 = if n % 2 == 0 { random::spliced(&mut rng, &w1, params) } else { random::word(&mut rng, params.rank, 20) };
        let collected = Element::collect(&w1, params)? == Element::collect(&w2, params)?;
        if collected != oracle_equal(&w1, &w2, params)? {
            disagreements.push(format!("{w1} vs {w2}"));
        }
    }
    let agree = disagreements.is_empty();
    let mut text = report.to_string();
    text.push_str(&format!(
        "  [{}] collector and oracle agree on random word pairs ({samples} checked)\n",
        if agree { "PASS" } else { "FAIL" }
    ));
    for d in disagreements.iter().take(5) {
        text.push_str(&format!("      witness: {d}\n"));
    }
    let items: Vec<Value> = report
        .items
        .iter()
        .map(|i| json!({ "name": i.name, "passed": i.passed, "checked": i.checked, "witnesses": i.witnesses }))
        .collect();
    Ok(Outcome {
        text,
        json: json!({
            "rank": params.rank,
            "class": params.class,
            "kernel": items,
            "pairs": { "checked": samples, "disagreements": disagreements },
            "passed": report.passed() && agree,
        }),
        failed: !(report.passed() && agree),
    })
}
