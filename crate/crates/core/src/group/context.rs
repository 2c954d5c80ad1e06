//! Per-parameter tables shared by all elements of one group: the basic
//! commutator basis and the conjugation action of each generator on it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::basic::{enumerate_weight, expand_left_normed, BasicCommutator};
use crate::GroupParams;

/// Sparse matrix column: `(target basis index, coefficient)`.
type Column = Vec<(usize, i64)>;

#[derive(Debug)]
pub(crate) struct Context {
    pub params: GroupParams,
    pub basis: Vec<BasicCommutator>,
    index: HashMap<Vec<usize>, usize>,
    /// `layer_start[w]..layer_start[w + 1]` are the basics of weight `w`,
    /// for `2 <= w <= class`.
    layer_start: Vec<usize>,
    weight: Vec<usize>,
    /// `action[i][c]` is `[c, a_i]` in basis coordinates, i.e. the nilpotent
    /// part `N_i` of conjugation by `a_i` (which acts as `1 + N_i`).
    action: Vec<Vec<Column>>,
}

static CONTEXTS: OnceLock<Mutex<HashMap<GroupParams, Arc<Context>>>> = OnceLock::new();

impl Context {
    pub fn get(params: GroupParams) -> Arc<Context> {
        let table = CONTEXTS.get_or_init(Default::default);
        if let Some(ctx) = table.lock().expect("context table poisoned").get(&params) {
            return ctx.clone();
        }
        let ctx = Arc::new(Context::build(params));
        table.lock().expect("context table poisoned").entry(params).or_insert(ctx).clone()
    }

    fn build(params: GroupParams) -> Context {
        let (d, k) = (params.rank, params.class);
        let mut basis = Vec::new();
        let mut layer_start = vec![0; k.max(1) + 2];
        for w in 2..=k {
            layer_start[w] = basis.len();
            basis.extend(enumerate_weight(d, w));
        }
        for w in (k + 1).max(2)..layer_start.len() {
            layer_start[w] = basis.len();
        }
        let index: HashMap<_, _> = basis.iter().enumerate().map(|(i, c)| (c.seq().to_vec(), i)).collect();
        let weight = basis.iter().map(BasicCommutator::weight).collect();
        let action = (0..d)
            .map(|g| {
                basis
                    .iter()
                    .map(|c| {
                        let mut seq = c.seq().to_vec();
                        seq.push(g);
                        expand_left_normed(&seq, k)
                            .into_iter()
                            .map(|(s, coef)| (index[&s], coef))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Context { params, basis, index, layer_start, weight, action }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, seq: &[usize]) -> Option<usize> {
        self.index.get(seq).copied()
    }

    pub fn weight_of(&self, idx: usize) -> usize {
        self.weight[idx]
    }

    pub fn layer(&self, w: usize) -> std::ops::Range<usize> {
        if w < 2 || w > self.params.class {
            return 0..0;
        }
        self.layer_start[w]..self.layer_start[w + 1]
    }

    /// Index of the weight-two basic `[i, j]`, `i > j`.
    pub fn pair_index(&self, i: usize, j: usize) -> Option<usize> {
        self.index_of(&[i, j])
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.dim()]
    }

    /// `N_g v`.
    pub fn nil(&self, g: usize, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = self.zero();
        let cols = &self.action[g];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(t, coef) in &cols[c] {
                out[t] += x * coef;
            }
        }
        out
    }

    /// `Σ_m coefs(m) N_g^m v` where `coefs` yields successive binomial-like
    /// coefficients starting at `m = 0`.
    fn series(&self, g: usize, v: &[BigInt], mut coef: BigInt, next: impl Fn(&BigInt, usize) -> BigInt) -> Vec<BigInt> {
        let mut out = self.zero();
        let mut term = v.to_vec();
        let mut m = 0;
        loop {
            if term.iter().all(Zero::is_zero) {
                break;
            }
            if !coef.is_zero() {
                for (o, t) in out.iter_mut().zip(&term) {
                    if !t.is_zero() {
                        *o += &coef * t;
                    }
                }
            }
            coef = next(&coef, m);
            m += 1;
            term = self.nil(g, &term);
        }
        out
    }

    /// `T_g^n v` with `T_g = 1 + N_g`, via the binomial series.
    pub fn act_pow(&self, g: usize, n: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
        if n.is_zero() {
            return v.to_vec();
        }
        let n = n.clone();
        self.series(g, v, BigInt::one(), move |c, m| c * (&n - m) / (m + 1))
    }

    /// `G_g(n) v` where `G_g(n) = (T_g^n - 1) / N_g = Σ_m C(n, m+1) N_g^m`.
    pub fn act_geometric(&self, g: usize, n: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
        if n.is_zero() {
            return self.zero();
        }
        let n = n.clone();
        // C(n,1) = n, C(n,m+2) = C(n,m+1) (n-m-1) / (m+2)
        self.series(g, v, n.clone(), move |c, m| c * (&n - m - 1) / (m + 2))
    }

    /// `T^e v = Π_g T_g^{e_g} v`.
    pub fn act_by(&self, e: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        let mut out = v.to_vec();
        for (g, n) in e.iter().enumerate() {
            if !n.is_zero() {
                out = self.act_pow(g, n, &out);
            }
        }
        out
    }

    /// Right multiplication of the normal form `a^e t` by `a_j^n`, in place.
    ///
    /// `a^e t a_j^n = a^{e + n δ_j} [P, a_j^n] t^{a_j^n}` where
    /// `P = a_{j+1}^{e_{j+1}} … a_{d-1}^{e_{d-1}}`, and
    /// `[a_i^p, a_j^n] = G_i(p) G_j(n) [a_i, a_j]`.
    pub fn step(&self, e: &mut [BigInt], t: &mut Vec<BigInt>, j: usize, n: &BigInt) {
        if n.is_zero() {
            return;
        }
        let d = self.params.rank;
        if self.dim() > 0 {
            let mut next = self.act_pow(j, n, t);
            for i in (j + 1)..d {
                if e[i].is_zero() {
                    continue;
                }
                let Some(c) = self.pair_index(i, j) else { continue };
                let mut v = self.zero();
                v[c] = BigInt::one();
                v = self.act_geometric(i, &e[i], &v);
                v = self.act_geometric(j, n, &v);
                for l in (i + 1)..d {
                    if !e[l].is_zero() {
                        v = self.act_pow(l, &e[l], &v);
                    }
                }
                for (a, b) in next.iter_mut().zip(v) {
                    *a += b;
                }
            }
            *t = next;
        }
        e[j] += n;
    }
}
