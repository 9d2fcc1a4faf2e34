//! Seeded random generators for property tests and reproducible experiments.
//!
//! All generators take an explicit RNG so that every randomized check in the
//! test suites is reproducible from a single seed.

use crate::exactnum::{Rational, Surd};
use crate::homogeneous::HomForm;
use crate::inhomogeneous::{classify, inner_box, is_divided, Cell, DividedCell};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A surd `r + s*sqrt(d)` with integer parts in `[-range, range]`.
pub fn random_surd(rng: &mut impl Rng, d: u64, range: i64) -> Surd {
    let r = Rational::from_integer(BigInt::from(rng.gen_range(-range..=range)));
    let s = Rational::from_integer(BigInt::from(rng.gen_range(-range..=range)));
    Surd::new(d, r, s)
}

/// A surd with a random small denominator as well.
pub fn random_surd_rational(rng: &mut impl Rng, d: u64, range: i64, max_den: i64) -> Surd {
    let r = Rational::new(
        BigInt::from(rng.gen_range(-range..=range)),
        BigInt::from(rng.gen_range(1..=max_den)),
    );
    let s = Rational::new(
        BigInt::from(rng.gen_range(-range..=range)),
        BigInt::from(rng.gen_range(1..=max_den)),
    );
    Surd::new(d, r, s)
}

/// A nondegenerate indefinite form: no lattice direction on an axis.
pub fn random_form(rng: &mut impl Rng, d: u64) -> HomForm {
    loop {
        let a0 = random_surd(rng, d, 4);
        let b0 = random_surd(rng, d, 4);
        let a1 = random_surd(rng, d, 4);
        let b1 = random_surd(rng, d, 4);
        if let Ok(f) = HomForm::new(a0, b0, a1, b1) {
            if !f.is_degenerate() {
                return f;
            }
        }
    }
}

/// An inhomogeneous problem whose linear part is nondegenerate.
pub fn random_problem(rng: &mut impl Rng, d: u64) -> Cell {
    loop {
        let f = random_form(rng, d);
        let (g1, g2) = f.columns();
        let c = (random_surd_rational(rng, d, 6, 4), random_surd_rational(rng, d, 6, 4));
        if let Ok(cell) = Cell::new(g1, g2, c) {
            return cell;
        }
    }
}

/// A normalized I-reduced basis (as a cell with `c = 0`), optionally with a
/// constraint on the step-governing ratio `a0/|b0|`.
pub fn random_i_reduced_basis(
    rng: &mut impl Rng,
    d: u64,
    ratio_test: impl Fn(&Surd) -> bool,
) -> Cell {
    loop {
        let f = random_form(rng, d);
        let Ok((reduced, _)) = f.reduce() else { continue };
        // Walk a few random chain steps for variety.
        let mut m = reduced;
        for _ in 0..rng.gen_range(0..4) {
            match m.step() {
                Ok((next, _)) => m = next,
                Err(_) => break,
            }
        }
        let (g1, g2) = m.columns();
        let Ok(cell) = Cell::new(g1, g2, (Surd::zero(), Surd::zero())) else { continue };
        let cell = cell.normalize();
        if !crate::inhomogeneous::is_i_reduced(&cell) {
            continue;
        }
        if cell.b0().is_zero() {
            continue;
        }
        let ratio = &(&cell.a0() / &cell.b0().abs());
        if ratio_test(ratio) {
            return cell;
        }
    }
}

/// A normalized Gaussian basis as a cell with `c = 0`.
pub fn random_g_cell(rng: &mut impl Rng, d: u64) -> Cell {
    loop {
        let cell = random_i_reduced_basis(rng, d, |_| true);
        let class = classify(&cell);
        if class.gaussian {
            return cell;
        }
    }
}

/// A divided cell: random I-reduced basis with the origin placed at a random
/// rational point of the inner box.
pub fn random_divided_cell(rng: &mut impl Rng, d: u64) -> DividedCell {
    loop {
        let basis = random_i_reduced_basis(rng, d, |_| true);
        let boxy = inner_box(&basis).expect("basis is I-reduced");
        let u = Surd::from_rational(Rational::new(BigInt::from(rng.gen_range(1..16i64)), BigInt::from(16)));
        let v = Surd::from_rational(Rational::new(BigInt::from(rng.gen_range(1..16i64)), BigInt::from(16)));
        // origin offset from the base vertex, inside the box
        let ox = &boxy.xi_lo + &(&u * &(&boxy.xi_hi - &boxy.xi_lo));
        let oy = &boxy.eta_lo + &(&v * &(&boxy.eta_hi - &boxy.eta_lo));
        let cell = Cell::new(
            basis.g1().clone(),
            basis.g2().clone(),
            (-&ox, -&oy),
        )
        .expect("basis already validated");
        if let Some(dc) = is_divided(&cell) {
            return dc;
        }
    }
}
