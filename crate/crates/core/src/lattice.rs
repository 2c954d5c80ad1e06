//! Exact integer linear algebra: Smith normal form with transforms, and
//! solving `A x = b` over the integers with an infeasibility certificate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// # Panics
    /// If a row does not have `cols` entries.
    pub fn from_rows(data: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: data.len(), cols, data }
    }

    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Self {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has the wrong length");
            for (i, x) in col.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("{} columns vs vector of length {}", self.cols, x.len())));
        }
        Ok(self.data.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect())
    }

    /// `y^T A`.
    pub fn left_mul_vec(&self, y: &[BigInt]) -> Result<Vec<BigInt>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("{} rows vs vector of length {}", self.rows, y.len())));
        }
        Ok((0..self.cols).map(|j| self.data.iter().zip(y).map(|(r, c)| &r[j] * c).sum()).collect())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self.data[i][l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += a * &other.data[l][j];
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let (d, s) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src);
            (&mut lo[dst], &hi[0])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst);
            (&mut hi[0], &lo[src])
        };
        for (x, y) in d.iter_mut().zip(s.iter()) {
            *x += q * y;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in &mut self.data {
            let v = q * &r[src];
            r[dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -&*x;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal of `D`, length `min(rows, cols)`, nonnegative.
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|x| !x.is_zero()).count()
    }

    /// Nonzero diagonal entries.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.diagonal.iter().take_while(|x| !x.is_zero()).cloned().collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let steps = m.min(n);
    for t in 0..steps {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &s.data[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < s.data[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(s, u, v, steps);
            };
            if pi != t {
                s.swap_rows(pi, t);
                u.swap_rows(pi, t);
            }
            if pj != t {
                s.swap_cols(pj, t);
                v.swap_cols(pj, t);
            }
            let pivot = s.data[t][t].clone();
            let mut clean = true;
            for i in (t + 1)..m {
                if s.data[i][t].is_zero() {
                    continue;
                }
                let q = -s.data[i][t].div_floor(&pivot);
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                clean &= s.data[i][t].is_zero();
            }
            for j in (t + 1)..n {
                if s.data[t][j].is_zero() {
                    continue;
                }
                let q = -s.data[t][j].div_floor(&pivot);
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                clean &= s.data[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let offending = ((t + 1)..m).find(|&i| ((t + 1)..n).any(|j| !s.data[i][j].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s.data[t][t].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(s, u, v, steps)
}

fn finish(s: IntMatrix, u: IntMatrix, v: IntMatrix, steps: usize) -> SmithForm {
    let diagonal = (0..steps).map(|i| s.data[i][i].clone()).collect();
    SmithForm { u, v, diagonal }
}

/// Proof that `A x = b` has no integer solution: `row^T A` is divisible by
/// `divisor` entrywise (identically zero when `divisor` is 0), while
/// `row^T b = residue` is not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasibilityCertificate {
    pub row: Vec<BigInt>,
    pub divisor: BigInt,
    pub residue: BigInt,
}

impl InfeasibilityCertificate {
    /// Re-checks the certificate against `a` and `b`.
    pub fn verify(&self, a: &IntMatrix, b: &[BigInt]) -> bool {
        let Ok(lhs) = a.left_mul_vec(&self.row) else { return false };
        let rhs: BigInt = self.row.iter().zip(b).map(|(x, y)| x * y).sum();
        if rhs != self.residue {
            return false;
        }
        if self.divisor.is_zero() {
            lhs.iter().all(Zero::is_zero) && !rhs.is_zero()
        } else {
            lhs.iter().all(|x| x.is_multiple_of(&self.divisor)) && !rhs.is_multiple_of(&self.divisor)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegerSolution {
    /// Every solution is `particular + Σ c_i kernel[i]`.
    Solvable { particular: Vec<BigInt>, kernel: Vec<Vec<BigInt>> },
    Infeasible(InfeasibilityCertificate),
}

impl IntegerSolution {
    pub fn particular(&self) -> Option<&[BigInt]> {
        match self {
            IntegerSolution::Solvable { particular, .. } => Some(particular),
            IntegerSolution::Infeasible(_) => None,
        }
    }

    pub fn is_solvable(&self) -> bool {
        matches!(self, IntegerSolution::Solvable { .. })
    }
}

/// Solves `A x = b` over the integers.
pub fn integer_solve(a: &IntMatrix, b: &[BigInt]) -> Result<IntegerSolution> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!("{} rows vs right-hand side of length {}", a.rows, b.len())));
    }
    let snf = smith_normal_form(a);
    Ok(solve_with(&snf, a.cols, b))
}

pub(crate) fn solve_with(snf: &SmithForm, cols: usize, b: &[BigInt]) -> IntegerSolution {
    let c = snf.u.mul_vec(b).expect("dimensions checked");
    let rank = snf.rank();
    let mut y = vec![BigInt::zero(); cols];
    for (i, ci) in c.iter().enumerate() {
        let di = snf.diagonal.get(i).filter(|_| i < rank);
        match di {
            Some(di) => {
                let (q, r) = ci.div_rem(di);
                if !r.is_zero() {
                    return IntegerSolution::Infeasible(InfeasibilityCertificate {
                        row: snf.u.row(i).to_vec(),
                        divisor: di.clone(),
                        residue: ci.clone(),
                    });
                }
                y[i] = q;
            }
            None if !ci.is_zero() => {
                return IntegerSolution::Infeasible(InfeasibilityCertificate {
                    row: snf.u.row(i).to_vec(),
                    divisor: BigInt::zero(),
                    residue: ci.clone(),
                });
            }
            None => {}
        }
    }
    let particular = snf.v.mul_vec(&y).expect("square transform");
    let kernel = (rank..cols).map(|j| snf.v.column(j)).collect();
    IntegerSolution::Solvable { particular, kernel }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_snf(a: &IntMatrix) -> SmithForm {
        let snf = smith_normal_form(a);
        let d = snf.u.mul(a).unwrap().mul(&snf.v).unwrap();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let expected = if i == j { snf.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d.get(i, j), &expected, "entry ({i},{j}) of\n{d}");
            }
        }
        let divs = snf.elementary_divisors();
        for w in divs.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        snf
    }

    #[test]
    fn identity_solves_to_rhs() {
        let a = IntMatrix::identity(3);
        let b = ints(&[4, -2, 7]);
        let sol = integer_solve(&a, &b).unwrap();
        assert_eq!(sol.particular().unwrap(), &b[..]);
    }

    #[test]
    fn parity_obstruction() {
        let a = IntMatrix::from_i64(&[&[2]]);
        let sol = integer_solve(&a, &ints(&[1])).unwrap();
        match sol {
            IntegerSolution::Infeasible(cert) => assert!(cert.verify(&a, &ints(&[1]))),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn rank_deficient_inconsistent() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let b = ints(&[1, 3]);
        let IntegerSolution::Infeasible(cert) = integer_solve(&a, &b).unwrap() else { panic!() };
        assert!(cert.divisor.is_zero());
        assert!(cert.verify(&a, &b));
    }

    #[test]
    fn known_elementary_divisors() {
        let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let snf = check_snf(&a);
        assert_eq!(snf.elementary_divisors(), ints(&[2, 6, 12]));
    }

    #[test]
    fn empty_shapes() {
        let a = IntMatrix::zeros(0, 3);
        let sol = integer_solve(&a, &[]).unwrap();
        let IntegerSolution::Solvable { kernel, .. } = sol else { panic!() };
        assert_eq!(kernel.len(), 3);
        assert!(integer_solve(&IntMatrix::zeros(2, 2), &ints(&[1])).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-6i64..=6, c), r).prop_map(move |rows| {
                IntMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect(), c)
            })
        })
    }

    proptest! {
        #[test]
        fn snf_is_a_factorization(a in arb_matrix()) {
            check_snf(&a);
        }

        #[test]
        fn solving_an_image_recovers_a_preimage(a in arb_matrix(), seed in prop::collection::vec(-5i64..=5, 4)) {
            let x: Vec<BigInt> = seed.iter().take(a.cols()).map(|&v| BigInt::from(v)).chain(std::iter::repeat(BigInt::zero())).take(a.cols()).collect();
            let b = a.mul_vec(&x).unwrap();
            let sol = integer_solve(&a, &b).unwrap();
            let IntegerSolution::Solvable { particular, kernel } = sol else { panic!("image must be solvable") };
            prop_assert_eq!(a.mul_vec(&particular).unwrap(), b);
            for k in kernel {
                prop_assert!(a.mul_vec(&k).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn infeasible_answers_carry_valid_certificates(a in arb_matrix(), rhs in prop::collection::vec(-7i64..=7, 4)) {
            let b: Vec<BigInt> = rhs.iter().take(a.rows()).map(|&v| BigInt::from(v)).chain(std::iter::repeat(BigInt::zero())).take(a.rows()).collect();
            match integer_solve(&a, &b).unwrap() {
                IntegerSolution::Solvable { particular, .. } => prop_assert_eq!(a.mul_vec(&particular).unwrap(), b),
                IntegerSolution::Infeasible(cert) => prop_assert!(cert.verify(&a, &b)),
            }
        }
    }
}
