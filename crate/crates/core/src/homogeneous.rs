//! Indefinite binary quadratic forms as 2x2 surd matrices and the continued
//! fraction machinery on them.
//!
//! A form `F(x,y) = (a0 x + b0 y)(a1 x + b1 y)` is stored by the matrix of
//! its factor coefficients. Rows are the two linear factors; columns are the
//! viewing-coordinate images of the lattice generators. Reduction, the
//! two-sided chain of reduced matrices, Markoff values and the Lagrange
//! sequence all operate exactly in one quadratic field.

use crate::exactnum::{NumError, Rational, Surd};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomError {
    #[error("form is not indefinite (discriminant <= 0)")]
    NotIndefinite,
    #[error("form represents zero at lattice point ({0}, {1})")]
    Degenerate(BigInt, BigInt),
    #[error("chain terminated: a lattice direction lies on an axis")]
    Terminated,
    #[error("matrix is not reduced")]
    NotReduced,
    #[error("alpha must be irrational and strictly between 0 and 1")]
    AlphaOutOfRange,
    #[error(transparent)]
    Num(#[from] NumError),
}

/// A 2x2 integer matrix with determinant +-1, acting on lattice bases by
/// right multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniMat {
    pub m: [[BigInt; 2]; 2],
}

impl Serialize for UniMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: [[String; 2]; 2] = [
            [self.m[0][0].to_string(), self.m[0][1].to_string()],
            [self.m[1][0].to_string(), self.m[1][1].to_string()],
        ];
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniMat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<UniMat, D::Error> {
        use serde::de::Error as _;
        use std::str::FromStr;
        let rows = <[[String; 2]; 2]>::deserialize(d)?;
        let parse = |t: &String| BigInt::from_str(t).map_err(D::Error::custom);
        Ok(UniMat {
            m: [
                [parse(&rows[0][0])?, parse(&rows[0][1])?],
                [parse(&rows[1][0])?, parse(&rows[1][1])?],
            ],
        })
    }
}

impl UniMat {
    pub fn identity() -> UniMat {
        UniMat { m: [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]] }
    }

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> UniMat {
        UniMat { m: [[BigInt::from(a), BigInt::from(b)], [BigInt::from(c), BigInt::from(d)]] }
    }

    pub fn det(&self) -> BigInt {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn mul(&self, rhs: &UniMat) -> UniMat {
        let mut out = UniMat::identity();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = &self.m[i][0] * &rhs.m[0][j] + &self.m[i][1] * &rhs.m[1][j];
            }
        }
        out
    }

    /// Exact inverse; valid because det = +-1.
    pub fn inverse(&self) -> UniMat {
        let det = self.det();
        debug_assert!(det.abs().is_one());
        let adj = UniMat {
            m: [
                [self.m[1][1].clone(), -&self.m[0][1]],
                [-&self.m[1][0], self.m[0][0].clone()],
            ],
        };
        if det.is_one() {
            adj
        } else {
            UniMat {
                m: [
                    [-&adj.m[0][0], -&adj.m[0][1]],
                    [-&adj.m[1][0], -&adj.m[1][1]],
                ],
            }
        }
    }

    pub fn col(&self, j: usize) -> (BigInt, BigInt) {
        (self.m[0][j].clone(), self.m[1][j].clone())
    }
}

/// Factored indefinite form: rows are factor coefficients `(a_i, b_i)`.
#[derive(Clone, PartialEq, Eq)]
pub struct HomForm {
    a0: Surd,
    b0: Surd,
    a1: Surd,
    b1: Surd,
}

// JSON: {"d": kernel, "rows": [["a0", "b0"], ["a1", "b1"]]} with surd
// literals.
impl Serialize for HomForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            d: u64,
            rows: [[String; 2]; 2],
        }
        let d = [&self.a0, &self.b0, &self.a1, &self.b1]
            .iter()
            .map(|x| x.kernel())
            .max()
            .unwrap();
        Repr {
            d,
            rows: [
                [self.a0.to_string(), self.b0.to_string()],
                [self.a1.to_string(), self.b1.to_string()],
            ],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<HomForm, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Repr {
            #[allow(dead_code)]
            d: u64,
            rows: [[String; 2]; 2],
        }
        let repr = Repr::deserialize(d)?;
        let parse = |t: &String| t.parse::<Surd>().map_err(D::Error::custom);
        HomForm::new(
            parse(&repr.rows[0][0])?,
            parse(&repr.rows[0][1])?,
            parse(&repr.rows[1][0])?,
            parse(&repr.rows[1][1])?,
        )
        .map_err(D::Error::custom)
    }
}

impl fmt::Debug for HomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} | {} {}]", self.a0, self.b0, self.a1, self.b1)
    }
}

/// A value that may be infinite, ordered with `Infinite` on top.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Extended {
    Finite(Surd),
    Infinite,
}

impl Extended {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(&self) -> Option<&Surd> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    /// Exact order; both finite values must live in one field.
    pub fn cmp_exact(&self, other: &Extended) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Extended::Infinite, Extended::Infinite) => Equal,
            (Extended::Infinite, _) => Greater,
            (_, Extended::Infinite) => Less,
            (Extended::Finite(a), Extended::Finite(b)) => {
                a.partial_cmp(b).expect("values in one field")
            }
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{}", v),
            Extended::Infinite => write!(f, "infinity"),
        }
    }
}

/// One entry of the two-sided chain of reduced matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomChainStep {
    pub index: i64,
    pub matrix: HomForm,
    /// Continued fraction digit consumed stepping forward from this entry.
    #[serde(with = "crate::exactnum::bigint_string")]
    pub digit: BigInt,
    /// Chain point in original lattice coordinates.
    #[serde(with = "crate::exactnum::bigint_pair_string")]
    pub point: (BigInt, BigInt),
    /// `delta / |xi * eta|` at the chain point.
    pub value: Surd,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MarkoffResult {
    pub value: Extended,
    #[serde(with = "crate::exactnum::bigint_pair_string")]
    pub point: (BigInt, BigInt),
    pub exact: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LagrangeStep {
    pub n: u32,
    #[serde(with = "crate::exactnum::bigint_string")]
    pub p: BigInt,
    #[serde(with = "crate::exactnum::bigint_string")]
    pub q: BigInt,
    pub value: Surd,
}

impl HomForm {
    pub fn new(a0: Surd, b0: Surd, a1: Surd, b1: Surd) -> Result<HomForm, HomError> {
        let f = HomForm { a0, b0, a1, b1 };
        if f.det().is_zero() {
            return Err(HomError::NotIndefinite);
        }
        Ok(f)
    }

    pub fn entries(&self) -> (&Surd, &Surd, &Surd, &Surd) {
        (&self.a0, &self.b0, &self.a1, &self.b1)
    }

    /// Column views: images of the two lattice generators.
    pub fn columns(&self) -> ((Surd, Surd), (Surd, Surd)) {
        ((self.a0.clone(), self.a1.clone()), (self.b0.clone(), self.b1.clone()))
    }

    pub fn det(&self) -> Surd {
        &(&self.a0 * &self.b1) - &(&self.a1 * &self.b0)
    }

    /// `sqrt(D(F)) = |a0 b1 - a1 b0|`, invariant along the chain.
    pub fn delta(&self) -> Surd {
        self.det().abs()
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> Surd {
        let (xi, eta) = self.viewing(x, y);
        &xi * &eta
    }

    /// Viewing coordinates of a lattice point.
    pub fn viewing(&self, x: &BigInt, y: &BigInt) -> (Surd, Surd) {
        let xs = Surd::from_rational(Rational::from_integer(x.clone()));
        let ys = Surd::from_rational(Rational::from_integer(y.clone()));
        (
            &(&self.a0 * &xs) + &(&self.b0 * &ys),
            &(&self.a1 * &xs) + &(&self.b1 * &ys),
        )
    }

    /// Factors `A x^2 + B xy + C y^2` over the field generated by `sqrt(D)`,
    /// `D = B^2 - 4AC > 0`. Rows are `(A, (B + sqrt D)/2)` and
    /// `(1, (B - sqrt D)/(2A))`; the product of the row forms reconstructs
    /// the polynomial exactly. A perfect-square discriminant yields rational
    /// rows (the form then represents zero and reduction reports it).
    pub fn from_coefficients(a: &Rational, b: &Rational, c: &Rational) -> Result<HomForm, HomError> {
        let four = Rational::from_integer(BigInt::from(4));
        let disc = b * b - four * (a * c);
        if !disc.is_positive() {
            return Err(HomError::NotIndefinite);
        }
        // sqrt(p/q) = sqrt(p*q)/q with p*q >= 0.
        let pq = disc.numer() * disc.denom();
        let root = Surd::new(
            pq.to_u64_checked()?,
            Rational::zero(),
            Rational::new(BigInt::one(), disc.denom().clone()),
        );
        let b_s = Surd::from_rational(b.clone());
        let a_s = Surd::from_rational(a.clone());
        let half = Surd::from_rational(Rational::new(BigInt::one(), BigInt::from(2)));
        let b0 = &(&b_s + &root) * &half;
        let b1 = &(&(&b_s - &root) * &half) / &a_s;
        HomForm::new(a_s, b0, Surd::one(), b1)
    }

    /// True when some nonzero lattice point lands on an axis, i.e. some row
    /// is rationally dependent. Such forms have `M(F)` infinite.
    pub fn is_degenerate(&self) -> bool {
        row_dependent(&self.a0, &self.b0) || row_dependent(&self.a1, &self.b1)
    }

    fn vanishing_point(&self) -> Option<(BigInt, BigInt)> {
        if row_dependent(&self.a0, &self.b0) {
            Some(dependence_witness(&self.a0, &self.b0))
        } else if row_dependent(&self.a1, &self.b1) {
            Some(dependence_witness(&self.a1, &self.b1))
        } else {
            None
        }
    }

    /// Geometric Gauss condition: first generator dominates in `xi`, second
    /// in `eta`, with mixed corner signs. All inequalities inclusive.
    pub fn is_reduced(&self) -> bool {
        self.a0.is_positive()
            && self.b1.is_positive()
            && (&self.a1 * &self.b0).signum() <= 0
            && (&self.a0 - &self.b0.abs()).signum() >= 0
            && (&self.b1 - &self.a1.abs()).signum() >= 0
    }

    /// Gauss-style column reduction. Returns a reduced matrix `g` and the
    /// unimodular `U` with `self * U = g` exactly (no row scaling).
    pub fn reduce(&self) -> Result<(HomForm, UniMat), HomError> {
        if let Some((x, y)) = self.vanishing_point() {
            return Err(HomError::Degenerate(x, y));
        }
        if self.is_reduced() {
            return Ok((self.clone(), UniMat::identity()));
        }
        let mut m = self.clone();
        let mut u = UniMat::identity();
        let apply = |m: &mut HomForm, u: &mut UniMat, t: &UniMat| {
            let cols = |t: &UniMat, j: usize| {
                let (p, q) = t.col(j);
                let p = Surd::from_rational(Rational::from_integer(p));
                let q = Surd::from_rational(Rational::from_integer(q));
                (p, q)
            };
            let (p0, q0) = cols(t, 0);
            let (p1, q1) = cols(t, 1);
            let a0 = &(&m.a0 * &p0) + &(&m.b0 * &q0);
            let b0 = &(&m.a0 * &p1) + &(&m.b0 * &q1);
            let a1 = &(&m.a1 * &p0) + &(&m.b1 * &q0);
            let b1 = &(&m.a1 * &p1) + &(&m.b1 * &q1);
            *m = HomForm { a0, b0, a1, b1 };
            *u = u.mul(t);
        };
        // Make both xi coordinates positive by column negation.
        if m.a0.is_negative() {
            apply(&mut m, &mut u, &UniMat::new(-1, 0, 0, 1));
        }
        if m.b0.is_negative() {
            apply(&mut m, &mut u, &UniMat::new(1, 0, 0, -1));
        }
        // Order so the first column dominates in xi.
        if (&m.a0 - &m.b0).signum() < 0 {
            apply(&mut m, &mut u, &UniMat::new(0, 1, 1, 0));
        }
        for _ in 0..100_000 {
            // The sign-canonical candidate keeps a0 > 0 and flips the second
            // column if needed to make b1 positive.
            let mut cand = m.clone();
            let mut cu = u.clone();
            if cand.b1.is_negative() {
                apply(&mut cand, &mut cu, &UniMat::new(1, 0, 0, -1));
            }
            if cand.is_reduced() {
                return Ok((cand, cu));
            }
            // Euclid on the xi coordinates: (u, v) -> (v, u - q v).
            let q = m.a0.floor_div(&m.b0)?;
            let t = UniMat {
                m: [[BigInt::zero(), BigInt::one()], [BigInt::one(), -&q]],
            };
            apply(&mut m, &mut u, &t);
        }
        unreachable!("column reduction failed to terminate on a nondegenerate form")
    }

    fn b0_sign(&self) -> i32 {
        self.b0.signum()
    }

    /// One continued-fraction step on a reduced matrix: the digit is
    /// `floor(a0 / |b0|)` and the new basis is `(old second column,
    /// combination)`, with a single row negated to restore the reduced sign
    /// pattern. Returns the successor and the digit.
    pub fn step(&self) -> Result<(HomForm, BigInt), HomError> {
        let (m, digit, _) = self.step_detail()?;
        Ok((m, digit))
    }

    /// Like [`HomForm::step`] but also returns the column matrix `S` with
    /// `self * S = D * result` for a diagonal `D` with entries +-1.
    pub fn step_detail(&self) -> Result<(HomForm, BigInt, UniMat), HomError> {
        if !self.is_reduced() {
            return Err(HomError::NotReduced);
        }
        if self.b0.is_zero() {
            return Err(HomError::Terminated);
        }
        let digit = self.a0.floor_div(&self.b0.abs())?;
        debug_assert!(digit.is_positive());
        let dig = Surd::from_rational(Rational::from_integer(digit.clone()));
        // b0 > 0: S = [[0,1],[1,-a]], restore signs by negating row 1.
        // b0 < 0: S = [[0,1],[1,+a]], restore signs by negating row 0.
        let (s, flip_row0) = if self.b0_sign() > 0 {
            (UniMat { m: [[BigInt::zero(), BigInt::one()], [BigInt::one(), -&digit]] }, false)
        } else {
            (UniMat { m: [[BigInt::zero(), BigInt::one()], [BigInt::one(), digit.clone()]] }, true)
        };
        let new_row = |x: &Surd, y: &Surd| -> (Surd, Surd) {
            let second = if self.b0_sign() > 0 { x - &(y * &dig) } else { x + &(y * &dig) };
            (y.clone(), second)
        };
        let (a0, b0) = new_row(&self.a0, &self.b0);
        let (a1, b1) = new_row(&self.a1, &self.b1);
        let out = if flip_row0 {
            HomForm { a0: -&a0, b0: -&b0, a1, b1 }
        } else {
            HomForm { a0, b0, a1: -&a1, b1: -&b1 }
        };
        debug_assert!(out.is_reduced(), "step output not reduced: {:?}", out);
        Ok((out, digit, s))
    }

    /// Exchange the roles of the two axes: swap rows and columns. An
    /// involution on reduced matrices reversing the chain direction.
    fn swap_axes(&self) -> HomForm {
        HomForm {
            a0: self.b1.clone(),
            b0: self.a1.clone(),
            a1: self.b0.clone(),
            b1: self.a0.clone(),
        }
    }

    /// One step backwards along the chain: conjugate by the axis swap.
    /// Returns the predecessor `p` (with `step(p)` recovering `self`) and
    /// the column matrix `S` with `self * S = D * p`.
    pub fn step_back_detail(&self) -> Result<(HomForm, BigInt, UniMat), HomError> {
        if !self.is_reduced() {
            return Err(HomError::NotReduced);
        }
        if self.a1.is_zero() {
            return Err(HomError::Terminated);
        }
        let (swapped, digit, s) = self.swap_axes().step_detail()?;
        let j = UniMat::new(0, 1, 1, 0);
        Ok((swapped.swap_axes(), digit, j.mul(&s).mul(&j)))
    }

    /// Two-sided chain of reduced matrices around the reduction of `self`,
    /// with `n_back` predecessors and `n_fwd` successors. Chain points are
    /// reported in the original lattice coordinates.
    pub fn chain(&self, n_back: u32, n_fwd: u32) -> Result<Vec<HomChainStep>, HomError> {
        let (m0, u0) = self.reduce()?;
        let delta = self.delta();
        let entry = |index: i64, m: &HomForm, u: &UniMat| -> HomChainStep {
            let (x, y) = u.col(0);
            let digit = m.a0.floor_div(&m.b0.abs()).expect("nondegenerate chain");
            let f = self.eval(&x, &y).abs();
            HomChainStep {
                index,
                matrix: m.clone(),
                digit,
                point: (x, y),
                value: &delta / &f,
            }
        };
        let mut steps = Vec::new();
        let mut m = m0.clone();
        let mut u = u0.clone();
        for i in 0..=n_back {
            if i > 0 {
                let (prev, _, s) = m.step_back_detail()?;
                u = u.mul(&s);
                m = prev;
            }
            steps.push(entry(-(i as i64), &m, &u));
        }
        steps.reverse();
        let mut m = m0;
        let mut u = u0;
        for i in 1..=n_fwd {
            let (next, _, s) = m.step_detail()?;
            u = u.mul(&s);
            m = next;
            steps.push(entry(i as i64, &m, &u));
        }
        Ok(steps)
    }

    /// Key for period detection: the matrix with each row rescaled to unit
    /// leading entry, which quotients out the diagonal action of unit
    /// scaling.
    fn period_key(&self) -> (Surd, Surd) {
        (
            &self.b0 / &self.a0, &self.a1 / &self.b1
        )
    }

    /// `M(F)`: supremum of `delta / |F|` over nonzero lattice points,
    /// computed over the two-sided chain truncated at `depth`. `exact` is
    /// true when period detection closes a cycle in both directions, in
    /// which case the maximum over the visited window is the supremum;
    /// otherwise the value is a certified lower bound.
    pub fn markoff(&self, depth: u32) -> MarkoffResult {
        let (m0, u0) = match self.reduce() {
            Ok(v) => v,
            Err(HomError::Degenerate(x, y)) => {
                return MarkoffResult {
                    value: Extended::Infinite,
                    point: (x, y),
                    exact: true,
                }
            }
            Err(_) => unreachable!("reduce only fails as degenerate"),
        };
        let delta = self.delta();
        let mut best: Option<(Surd, (BigInt, BigInt))> = None;
        let consider = |u: &UniMat, best: &mut Option<(Surd, (BigInt, BigInt))>| {
            let (x, y) = u.col(0);
            let f = self.eval(&x, &y).abs();
            let v = &delta / &f;
            match best {
                Some((cur, _)) if v.partial_cmp(cur).unwrap() != std::cmp::Ordering::Greater => {}
                _ => *best = Some((v, (x, y))),
            }
        };
        let walk = |backwards: bool, best: &mut Option<(Surd, (BigInt, BigInt))>| -> bool {
            let mut m = m0.clone();
            let mut u = u0.clone();
            let mut seen: Vec<(Surd, Surd)> = Vec::new();
            for _ in 0..depth {
                let key = m.period_key();
                if seen.contains(&key) {
                    return true;
                }
                seen.push(key);
                consider(&u, best);
                let stepped = if backwards { m.step_back_detail() } else { m.step_detail() };
                match stepped {
                    Ok((next, _, s)) => {
                        u = u.mul(&s);
                        m = next;
                    }
                    Err(_) => return true,
                }
            }
            false
        };
        let fwd_closed = walk(false, &mut best);
        let bwd_closed = walk(true, &mut best);
        let (value, point) = best.expect("depth >= 1 visits the base entry");
        MarkoffResult { value: Extended::Finite(value), point, exact: fwd_closed && bwd_closed }
    }
}

fn row_dependent(x: &Surd, y: &Surd) -> bool {
    let det = &(x.rational_part() * y.surd_part()) - &(y.rational_part() * x.surd_part());
    det.is_zero()
}

/// Integer `(p, q) != 0` with `p x + q y = 0` for a rationally dependent row.
fn dependence_witness(x: &Surd, y: &Surd) -> (BigInt, BigInt) {
    if x.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    if y.is_zero() {
        return (BigInt::zero(), BigInt::one());
    }
    let t = (y / x).as_rational().expect("dependent row has rational ratio").clone();
    let (n, m) = (t.numer().clone(), t.denom().clone());
    let g = n.gcd(&m);
    (n / &g, -(m / g))
}

trait ToU64Checked {
    fn to_u64_checked(&self) -> Result<u64, NumError>;
}

impl ToU64Checked for BigInt {
    fn to_u64_checked(&self) -> Result<u64, NumError> {
        use num_traits::ToPrimitive;
        self.to_u64().ok_or_else(|| NumError::KernelTooLarge(self.clone()))
    }
}

/// Exact Lagrange data for an irrational `alpha` in (0, 1): for each
/// convergent `p_n / q_n`, the value `M_n = 1 / (q_n |q_n alpha - p_n|)`,
/// which corresponds to the form `x (y - x alpha)` with delta 1.
pub fn lagrange_sequence(alpha: &Surd, n_max: u32) -> Result<Vec<LagrangeStep>, HomError> {
    if alpha.is_rational() {
        return Err(HomError::Degenerate(BigInt::zero(), BigInt::one()));
    }
    if alpha.signum() <= 0 || (&Surd::one() - alpha).signum() <= 0 {
        return Err(HomError::AlphaOutOfRange);
    }
    let mut out = Vec::new();
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q) = (BigInt::zero(), BigInt::one());
    let mut x = &Surd::one() / alpha; // alpha = [0; a1, a2, ...]
    for n in 1..=n_max {
        let a = x.floor();
        let (pn, qn) = (&a * &p + &p_prev, &a * &q + &q_prev);
        let ps = Surd::from_rational(Rational::from_integer(pn.clone()));
        let qs = Surd::from_rational(Rational::from_integer(qn.clone()));
        let err = (&(&qs * alpha) - &ps).abs();
        let value = &Surd::one() / &(&qs * &err);
        out.push(LagrangeStep { n, p: pn.clone(), q: qn.clone(), value });
        (p_prev, q_prev) = (p, q);
        (p, q) = (pn, qn);
        let frac = &x - &Surd::from_rational(Rational::from_integer(a));
        x = &Surd::one() / &frac;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;

    fn s(text: &str) -> Surd {
        text.parse().unwrap()
    }

    fn rat(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn form(a0: &str, b0: &str, a1: &str, b1: &str) -> HomForm {
        HomForm::new(s(a0), s(b0), s(a1), s(b1)).unwrap()
    }

    fn eq5_matrix() -> HomForm {
        form("1+sqrt(3)", "1", "1-sqrt(3)", "1")
    }

    /// Expands the product of the two row forms and compares against the
    /// coefficient triple.
    fn reconstructs(f: &HomForm, a: i64, b: i64, c: i64) -> bool {
        let (a0, b0, a1, b1) = f.entries();
        &(a0 * a1) == &Surd::from_int(a)
            && &(&(a0 * b1) + &(a1 * b0)) == &Surd::from_int(b)
            && &(b0 * b1) == &Surd::from_int(c)
    }

    #[test]
    fn factoring_reconstructs_the_form() {
        let f = HomForm::from_coefficients(&rat(1), &rat(0), &rat(-3)).unwrap();
        assert!(reconstructs(&f, 1, 0, -3));
        assert_eq!(f.delta(), s("2*sqrt(3)"));

        let g = HomForm::from_coefficients(&rat(1), &rat(-1), &rat(-1)).unwrap();
        assert!(reconstructs(&g, 1, -1, -1));
        assert_eq!(g.delta(), s("sqrt(5)"));
        // Rows carry the golden factor coefficients (order-free check).
        let minus_phi = s("-1/2-1/2*sqrt(5)");
        let minus_psi = s("-1/2+1/2*sqrt(5)");
        let (_, b0, _, b1) = g.entries();
        assert!(
            (b0 == &minus_phi && b1 == &minus_psi) || (b0 == &minus_psi && b1 == &minus_phi)
        );
    }

    #[test]
    fn definite_form_rejected() {
        assert_eq!(
            HomForm::from_coefficients(&rat(1), &rat(0), &rat(1)).unwrap_err(),
            HomError::NotIndefinite
        );
    }

    #[test]
    fn reduced_predicate_examples() {
        assert!(eq5_matrix().is_reduced());
        assert!(!form("1", "sqrt(3)", "1", "-sqrt(3)").is_reduced());
        assert!(form("1", "0", "0", "1").is_reduced());
    }

    #[test]
    fn reduce_produces_reduced_with_exact_transform() {
        let f = form("1", "sqrt(3)", "1", "-sqrt(3)");
        let (g, u) = f.reduce().unwrap();
        assert!(g.is_reduced());
        assert!(u.det().abs().is_one());
        // f * U = g exactly, so f = g * U^{-1}.
        let (gg, _) = g.reduce().unwrap();
        assert_eq!(gg, g, "reduced output is a fixed point");
        assert_form_times_u(&f, &u, &g);
    }

    #[test]
    fn reduce_is_identity_on_reduced_input() {
        let f = eq5_matrix();
        let (g, u) = f.reduce().unwrap();
        assert_eq!(g, f);
        assert_eq!(u, UniMat::identity());
    }

    #[test]
    fn reduce_rejects_degenerate_forms() {
        let f = HomForm::from_coefficients(&rat(1), &rat(0), &rat(-1)).unwrap();
        match f.reduce().unwrap_err() {
            HomError::Degenerate(x, y) => {
                assert_eq!(f.eval(&x, &y), Surd::zero());
                assert!(!(x.is_zero() && y.is_zero()));
            }
            e => panic!("expected degenerate, got {e:?}"),
        }
    }

    fn assert_form_times_u(f: &HomForm, u: &UniMat, expect: &HomForm) {
        let (c1, c2) = f.columns();
        let col = |j: usize| {
            let (p, q) = u.col(j);
            let p = Surd::from_rational(Rational::from_integer(p));
            let q = Surd::from_rational(Rational::from_integer(q));
            (
                &(&c1.0 * &p) + &(&c2.0 * &q),
                &(&c1.1 * &p) + &(&c2.1 * &q),
            )
        };
        let (a0, a1) = col(0);
        let (b0, b1) = col(1);
        let (e0, e1, e2, e3) = expect.entries();
        assert_eq!((&a0, &b0, &a1, &b1), (e0, e1, e2, e3));
    }

    #[test]
    fn step_digit_matches_worked_example() {
        let f = eq5_matrix();
        let (g, digit) = f.step().unwrap();
        assert_eq!(digit, BigInt::from(2));
        assert!(g.is_reduced());
        // Undo: f * S = D * g with D = diag(1, -1) here.
        let (out, _, sm) = f.step_detail().unwrap();
        assert_eq!(out, g);
        let inv = sm.inverse();
        // g's rows un-flipped, multiplied by S^{-1}, recover f.
        let unflipped = HomForm {
            a0: out.a0.clone(),
            b0: out.b0.clone(),
            a1: -&out.a1,
            b1: -&out.b1,
        };
        assert_form_times_u(&unflipped, &inv, &f);
    }

    #[test]
    fn golden_form_has_period_one() {
        let g = HomForm::from_coefficients(&rat(1), &rat(-1), &rat(-1)).unwrap();
        let (mut m, _) = g.reduce().unwrap();
        for _ in 0..10 {
            let (next, digit) = m.step().unwrap();
            assert_eq!(digit, BigInt::one());
            m = next;
        }
    }

    #[test]
    fn step_terminates_on_axis_parallel_boundary() {
        let f = form("1", "0", "0", "1");
        assert_eq!(f.step().unwrap_err(), HomError::Terminated);
    }

    #[test]
    fn back_step_inverts_forward_step() {
        let mut rng = sampling::rng(21);
        for _ in 0..40 {
            let d = [2u64, 3, 5][rand::Rng::gen_range(&mut rng, 0..3)];
            let f = sampling::random_form(&mut rng, d);
            let (m, _) = f.reduce().unwrap();
            let (fwd, _, _) = m.step_detail().unwrap();
            let (back, _, _) = fwd.step_back_detail().unwrap();
            assert_eq!(back, m);
            let (fwd2, _, _) = back.step_detail().unwrap();
            assert_eq!(fwd2, fwd);
        }
    }

    #[test]
    fn chain_of_sqrt3_form_contains_unit_points() {
        let f = HomForm::from_coefficients(&rat(1), &rat(0), &rat(-3)).unwrap();
        let chain = f.chain(4, 12).unwrap();
        assert_eq!(chain.len(), 17);
        let has_point = |x: i64, y: i64| {
            chain.iter().any(|st| st.point == (BigInt::from(x), BigInt::from(y)))
        };
        assert!(has_point(1, 0) || has_point(-1, 0));
        // Values |F| = 1 occur along the chain: M_n = delta there.
        let delta = f.delta();
        assert!(chain.iter().any(|st| st.value == delta));
        // Digits are eventually periodic in {1, 2}.
        for st in chain.iter().filter(|st| st.index >= 1) {
            let d: BigInt = st.digit.clone();
            assert!(d == BigInt::one() || d == BigInt::from(2), "digit {d} out of period");
        }
        // Window of size one.
        assert_eq!(f.chain(0, 0).unwrap().len(), 1);
    }

    #[test]
    fn chain_delta_and_minimality_invariants() {
        let mut rng = sampling::rng(22);
        for _ in 0..10 {
            let f = sampling::random_form(&mut rng, 5);
            let delta = f.delta();
            let chain = f.chain(3, 8).unwrap();
            for st in &chain {
                assert_eq!(st.matrix.delta(), delta);
                assert!(st.matrix.is_reduced());
            }
        }
    }

    #[test]
    fn markoff_values_for_classic_forms() {
        let f = HomForm::from_coefficients(&rat(1), &rat(0), &rat(-3)).unwrap();
        let r = f.markoff(32);
        assert!(r.exact);
        assert_eq!(r.value, Extended::Finite(s("2*sqrt(3)")));
        assert_eq!(f.eval(&r.point.0, &r.point.1).abs(), Surd::one());

        let g = HomForm::from_coefficients(&rat(1), &rat(-1), &rat(-1)).unwrap();
        let r = g.markoff(32);
        assert!(r.exact);
        assert_eq!(r.value, Extended::Finite(s("sqrt(5)")));

        let h = HomForm::from_coefficients(&rat(1), &rat(0), &rat(-1)).unwrap();
        let r = h.markoff(32);
        assert_eq!(r.value, Extended::Infinite);
        assert_eq!(h.eval(&r.point.0, &r.point.1), Surd::zero());
    }

    #[test]
    fn lagrange_golden_and_sqrt2() {
        let alpha = s("-1/2+1/2*sqrt(5)");
        let steps = lagrange_sequence(&alpha, 20).unwrap();
        assert_eq!(steps.len(), 20);
        let m20 = &steps[19].value;
        let diff = (m20 - &s("sqrt(5)")).abs();
        let tol = Surd::from_rational(Rational::new(BigInt::one(), BigInt::from(1_000_000)));
        assert!((&diff - &tol).signum() < 0, "M20 = {m20}, err {diff}");

        let alpha = s("-1+sqrt(2)");
        let steps = lagrange_sequence(&alpha, 20).unwrap();
        let m20 = &steps[19].value;
        let diff = (m20 - &s("2*sqrt(2)")).abs();
        let tol = Surd::from_rational(Rational::new(BigInt::one(), BigInt::from(10_000)));
        assert!((&diff - &tol).signum() < 0);
        // The running maximum is pinned by the first convergent, which
        // overshoots the limit superior by exactly 3/2 - sqrt(2).
        assert_eq!(steps[0].value, s("3/2+sqrt(2)"));

        assert!(lagrange_sequence(&alpha, 0).unwrap().is_empty());
        assert!(matches!(
            lagrange_sequence(&Surd::from_rational(Rational::new(BigInt::one(), BigInt::from(2))), 5),
            Err(HomError::Degenerate(_, _))
        ));
        assert!(matches!(
            lagrange_sequence(&s("1+sqrt(2)"), 5),
            Err(HomError::AlphaOutOfRange)
        ));
    }
}
