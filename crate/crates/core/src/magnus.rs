//! Truncated Magnus-style representation, an equality oracle for `M`
//! that shares no code with the collector.
//!
//! A generator `a_i` maps to the upper-triangular pair `(1 + X_i, e_i)`,
//! read as the matrix `[[s, m], [0, 1]]` with `s` a polynomial and `m` a
//! vector of `d` polynomials. Products are `(s1, m1)(s2, m2) = (s1 s2, s1 m2 + m1)`.
//! The scalar is truncated above total degree `k` and the module part above
//! degree `k - 1`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::lattice::{smith_normal_form, IntMatrix};
use crate::words::{Letter, Word};
use crate::{Error, GroupParams, Result};

/// Integer polynomial in `X_0 … X_{n-1}` with every term of total degree
/// at most `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncPoly {
    vars: usize,
    cap: usize,
    terms: BTreeMap<Vec<u16>, BigInt>,
}

impl TruncPoly {
    pub fn zero(vars: usize, cap: usize) -> Self {
        TruncPoly { vars, cap, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, cap: usize, c: impl Into<BigInt>) -> Self {
        let mut p = TruncPoly::zero(vars, cap);
        p.add_term(vec![0; vars], c.into());
        p
    }

    pub fn one(vars: usize, cap: usize) -> Self {
        TruncPoly::constant(vars, cap, 1)
    }

    /// `1 + X_i`.
    pub fn one_plus_var(vars: usize, cap: usize, i: usize) -> Self {
        let mut p = TruncPoly::one(vars, cap);
        let mut m = vec![0; vars];
        m[i] = 1;
        p.add_term(m, BigInt::one());
        p
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&vec![0; self.vars]).cloned().unwrap_or_default()
    }

    /// Smallest total degree carrying a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(|m| degree(m)).min()
    }

    fn add_term(&mut self, mono: Vec<u16>, c: BigInt) {
        if c.is_zero() || degree(&mono) > self.cap {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Same polynomial truncated at a (possibly lower) cap.
    pub fn truncate(&self, cap: usize) -> TruncPoly {
        TruncPoly {
            vars: self.vars,
            cap,
            terms: self.terms.iter().filter(|(m, _)| degree(m) <= cap).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &TruncPoly) -> TruncPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> TruncPoly {
        TruncPoly {
            vars: self.vars,
            cap: self.cap,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &TruncPoly) -> TruncPoly {
        self.add(&other.neg())
    }

    /// Product truncated at `cap`.
    pub fn mul_capped(&self, other: &TruncPoly, cap: usize) -> TruncPoly {
        let mut out = TruncPoly::zero(self.vars, cap);
        for (m1, c1) in &self.terms {
            let d1 = degree(m1);
            if d1 > cap {
                continue;
            }
            for (m2, c2) in &other.terms {
                if d1 + degree(m2) > cap {
                    continue;
                }
                let mono: Vec<u16> = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(mono, c1 * c2);
            }
        }
        out
    }

    pub fn mul(&self, other: &TruncPoly) -> TruncPoly {
        self.mul_capped(other, self.cap.min(other.cap))
    }

    /// Multiplicative inverse of a polynomial whose constant term is `±1`.
    pub fn unit_inverse(&self) -> Result<TruncPoly> {
        let c = self.constant_term();
        if !c.abs().is_one() {
            return Err(Error::InvalidInput(format!("constant term {c} is not a unit")));
        }
        // s = c (1 + r)  =>  s^-1 = c Σ (-r)^n
        let r = self.mul(&TruncPoly::constant(self.vars, self.cap, c.clone())).sub(&TruncPoly::one(self.vars, self.cap));
        let neg_r = r.neg();
        let mut sum = TruncPoly::one(self.vars, self.cap);
        let mut term = TruncPoly::one(self.vars, self.cap);
        for _ in 0..self.cap {
            term = term.mul(&neg_r);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
        }
        Ok(sum.mul(&TruncPoly::constant(self.vars, self.cap, c)))
    }
}

fn degree(m: &[u16]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("X{i}") } else { format!("X{i}^{e}") })
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else {
                    format!("{}*{}", c, vars.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusMatrix {
    pub scalar: TruncPoly,
    pub module: Vec<TruncPoly>,
}

impl MagnusMatrix {
    pub fn identity(params: GroupParams) -> Self {
        let (d, k) = (params.rank, params.class);
        MagnusMatrix {
            scalar: TruncPoly::one(d, k),
            module: vec![TruncPoly::zero(d, k - 1); d],
        }
    }

    pub fn generator(params: GroupParams, i: usize) -> Self {
        let (d, k) = (params.rank, params.class);
        let mut module = vec![TruncPoly::zero(d, k - 1); d];
        module[i] = TruncPoly::one(d, k - 1);
        MagnusMatrix { scalar: TruncPoly::one_plus_var(d, k, i), module }
    }

    pub fn is_identity(&self) -> bool {
        self.scalar.terms.len() == 1 && self.scalar.constant_term().is_one() && self.module.iter().all(TruncPoly::is_zero)
    }

    pub fn mul(&self, other: &MagnusMatrix) -> MagnusMatrix {
        let module_cap = self.module.first().map_or(0, TruncPoly::cap);
        MagnusMatrix {
            scalar: self.scalar.mul(&other.scalar),
            module: self
                .module
                .iter()
                .zip(&other.module)
                .map(|(m1, m2)| self.scalar.mul_capped(m2, module_cap).add(m1))
                .collect(),
        }
    }

    pub fn inverse(&self) -> MagnusMatrix {
        let module_cap = self.module.first().map_or(0, TruncPoly::cap);
        let s_inv = self.scalar.unit_inverse().expect("scalar part is always a unit");
        MagnusMatrix {
            module: self.module.iter().map(|m| s_inv.mul_capped(m, module_cap).neg()).collect(),
            scalar: s_inv,
        }
    }

    pub fn pow(&self, n: &BigInt, params: GroupParams) -> MagnusMatrix {
        let mut base = if n.is_negative() { self.inverse() } else { self.clone() };
        let mut n = n.abs();
        let mut acc = MagnusMatrix::identity(params);
        let two = BigInt::from(2);
        while !n.is_zero() {
            if (&n % &two).is_one() {
                acc = acc.mul(&base);
            }
            n /= &two;
            if !n.is_zero() {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl fmt::Display for MagnusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; ", self.scalar)?;
        for (i, m) in self.module.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str(")")
    }
}

/// Generator images and their inverses, for fast evaluation of words.
pub struct MagnusEvaluator {
    params: GroupParams,
    gens: Vec<MagnusMatrix>,
    invs: Vec<MagnusMatrix>,
}

impl MagnusEvaluator {
    pub fn new(params: GroupParams) -> Self {
        let gens: Vec<_> = (0..params.rank).map(|i| MagnusMatrix::generator(params, i)).collect();
        let invs = gens.iter().map(MagnusMatrix::inverse).collect();
        MagnusEvaluator { params, gens, invs }
    }

    pub fn eval(&self, w: &Word) -> Result<MagnusMatrix> {
        w.check_rank(self.params.rank)?;
        let mut acc = MagnusMatrix::identity(self.params);
        for Letter { gen, exp } in w.letters() {
            let small = exp.abs() <= BigInt::from(8);
            if small {
                let step = if exp.is_negative() { &self.invs[*gen] } else { &self.gens[*gen] };
                let reps: u32 = exp.abs().try_into().expect("small exponent");
                for _ in 0..reps {
                    acc = acc.mul(step);
                }
            } else {
                acc = acc.mul(&self.gens[*gen].pow(exp, self.params));
            }
        }
        Ok(acc)
    }
}

/// Image of `w` under `a_i ↦ (1 + X_i, e_i)`.
pub fn magnus_of_word(w: &Word, params: GroupParams) -> Result<MagnusMatrix> {
    MagnusEvaluator::new(params).eval(w)
}

/// Whether `w1` and `w2` have the same truncated Magnus image.
pub fn oracle_equal(w1: &Word, w2: &Word, params: GroupParams) -> Result<bool> {
    let ev = MagnusEvaluator::new(params);
    Ok(ev.eval(w1)? == ev.eval(w2)?)
}

#[derive(Debug, Clone)]
pub struct SelfCheckItem {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SelfCheckReport {
    pub params: GroupParams,
    pub items: Vec<SelfCheckItem>,
}

impl SelfCheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

impl fmt::Display for SelfCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "oracle self-check ({})", self.params)?;
        for item in &self.items {
            writeln!(
                f,
                "  [{}] {} ({} checked)",
                if item.passed { "PASS" } else { "FAIL" },
                item.name,
                item.checked
            )?;
            for w in &item.witnesses {
                writeln!(f, "      witness: {w}")?;
            }
        }
        Ok(())
    }
}

/// Largest rank accepted by [`kernel_selfcheck`].
pub const SELFCHECK_MAX_RANK: usize = 3;
/// Largest class accepted by [`kernel_selfcheck`].
pub const SELFCHECK_MAX_CLASS: usize = 6;

/// Checks that the kernel of the truncated representation looks like
/// `F'' γ_{k+1}(F)`:
///
/// * every basic commutator of weight `<= k` has a nontrivial image, and the
///   leading homogeneous parts within each weight are linearly independent;
/// * every left-normed generator commutator of weight `k + 1` is trivial;
/// * a fixed list of words in `F''` is trivial.
pub fn kernel_selfcheck(params: GroupParams) -> Result<SelfCheckReport> {
    if params.rank > SELFCHECK_MAX_RANK || params.class > SELFCHECK_MAX_CLASS {
        return Err(Error::InvalidInput(format!(
            "self-check is limited to rank <= {SELFCHECK_MAX_RANK} and class <= {SELFCHECK_MAX_CLASS}"
        )));
    }
    let (d, k) = (params.rank, params.class);
    let ev = MagnusEvaluator::new(params);
    let mut items = Vec::new();

    // Images of all left-normed generator commutators, by prefix.
    let mut images: BTreeMap<Vec<usize>, MagnusMatrix> = BTreeMap::new();
    let mut frontier: Vec<(Vec<usize>, MagnusMatrix)> = (0..d).map(|i| (vec![i], ev.gens[i].clone())).collect();
    let mut top_failures = Vec::new();
    let mut top_checked = 0;
    for w in 2..=k + 1 {
        let mut next = Vec::new();
        for (seq, m) in &frontier {
            for g in 0..d {
                let c = m.inverse().mul(&ev.invs[g]).mul(m).mul(&ev.gens[g]);
                let mut s = seq.clone();
                s.push(g);
                if w == k + 1 {
                    top_checked += 1;
                    if !c.is_identity() && top_failures.len() < 5 {
                        top_failures.push(format!("{s:?}"));
                    }
                } else {
                    images.insert(s.clone(), c.clone());
                    next.push((s, c));
                }
            }
        }
        frontier = next;
    }

    let mut nontrivial_failures = Vec::new();
    let mut independence_failures = Vec::new();
    let mut basic_count = 0;
    for w in 2..=k {
        let basics = crate::group::enumerate_basics(params, w)?;
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut monomials: BTreeMap<(usize, Vec<u16>), usize> = BTreeMap::new();
        let mut columns: Vec<Vec<((usize, Vec<u16>), BigInt)>> = Vec::new();
        for c in &basics {
            basic_count += 1;
            let m = &images[c.seq()];
            if m.is_identity() {
                nontrivial_failures.push(c.display(d));
            }
            // leading part: module coordinates of degree w - 1
            let mut col = Vec::new();
            for (i, p) in m.module.iter().enumerate() {
                for (mono, coef) in p.terms() {
                    if degree(mono) == w - 1 {
                        let key = (i, mono.to_vec());
                        let n = monomials.len();
                        monomials.entry(key.clone()).or_insert(n);
                        col.push((key, coef.clone()));
                    }
                }
            }
            columns.push(col);
        }
        rows.resize(monomials.len(), vec![BigInt::zero(); basics.len()]);
        for (j, col) in columns.iter().enumerate() {
            for (key, coef) in col {
                rows[monomials[key]][j] = coef.clone();
            }
        }
        let rank = if basics.is_empty() { 0 } else { smith_normal_form(&IntMatrix::from_rows(rows, basics.len())).rank() };
        if rank != basics.len() {
            independence_failures.push(format!("weight {w}: rank {rank} of {}", basics.len()));
        }
    }
    items.push(SelfCheckItem {
        name: "basic commutators have nontrivial images".into(),
        passed: nontrivial_failures.is_empty(),
        checked: basic_count,
        witnesses: nontrivial_failures,
    });
    items.push(SelfCheckItem {
        name: "leading terms of each weight are independent".into(),
        passed: independence_failures.is_empty(),
        checked: k.saturating_sub(1),
        witnesses: independence_failures,
    });
    items.push(SelfCheckItem {
        name: format!("weight-{} commutators are trivial", k + 1),
        passed: top_failures.is_empty(),
        checked: top_checked,
        witnesses: top_failures,
    });

    let mut f2_failures = Vec::new();
    let witnesses = second_derived_witnesses(d);
    for w in &witnesses {
        if !ev.eval(w)?.is_identity() {
            f2_failures.push(w.display(d));
        }
    }
    items.push(SelfCheckItem {
        name: "second-derived words are trivial".into(),
        passed: f2_failures.is_empty(),
        checked: witnesses.len(),
        witnesses: f2_failures,
    });

    Ok(SelfCheckReport { params, items })
}

/// Commutators of pairs of commutators over short generator words.
pub fn second_derived_witnesses(d: usize) -> Vec<Word> {
    let g = |i: usize, e: i64| Word::letter(i % d, e);
    let basics: Vec<Word> = vec![
        g(0, 1),
        g(1, 1),
        g(2, 1),
        g(0, 1).mul(&g(1, 1)),
        g(1, -1).mul(&g(2, 2)),
        g(2, 1).mul(&g(0, -1)),
    ];
    let mut comms = Vec::new();
    for (i, x) in basics.iter().enumerate() {
        for y in basics.iter().skip(i + 1) {
            let c = Word::commutator(x, y);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    comms.push(Word::left_normed(&[g(1, 1), g(0, 1), g(0, 1)]).expect("nonempty"));
    comms.push(Word::left_normed(&[g(2, 1), g(1, 1), g(0, -1)]).expect("nonempty"));
    let mut out = Vec::new();
    for (i, x) in comms.iter().enumerate() {
        for y in comms.iter().skip(i + 1).step_by(3) {
            if out.len() >= 24 {
                return out;
            }
            out.push(Word::commutator(x, y));
        }
    }
    out
}
