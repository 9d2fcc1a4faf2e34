//! The divided cell step and successor enumeration.
//!
//! The step is governed by the first row: extending the left side of the
//! cell until it crosses the vertical axis determines `h`, extending the
//! right side determines `k`, and the combined column operation produces the
//! next divided cell. The `b0 < 0` case is the mirror image of the `b0 > 0`
//! case.

use super::{
    apply_aff, inner_box, is_divided, is_i_reduced, trusted_divided, Aff3, Cell, Direction,
    DividedCell, InhomError, InnerBox, StepChoice,
};
use crate::exactnum::Surd;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

fn aff_plus(h: &BigInt, k: &BigInt) -> Aff3 {
    // [[0,-1,1],[1,h+k,-k],[0,0,1]]
    let mut s = Aff3::from_i64([[0, -1], [1, 0]], (1, 0));
    s.lin[1][1] = h + k;
    s.tr.1 = -k;
    s
}

fn aff_minus(h: &BigInt, k: &BigInt) -> Aff3 {
    // [[0,1,0],[-1,h+k,1-h],[0,0,1]]
    let mut s = Aff3::from_i64([[0, 1], [-1, 0]], (0, 1));
    s.lin[1][1] = h + k;
    s.tr.1 = BigInt::one() - h;
    s
}

fn step_aff(b0_positive: bool, h: &BigInt, k: &BigInt) -> Aff3 {
    if b0_positive {
        aff_plus(h, k)
    } else {
        aff_minus(h, k)
    }
}

/// The forward divided cell step together with the column operation that
/// realizes it, for callers tracking lattice labels across steps.
pub fn step_forward_detail(
    dc: &DividedCell,
) -> Result<(DividedCell, StepChoice, Aff3), InhomError> {
    let cell = dc.cell();
    let b0 = cell.b0();
    if b0.is_zero() {
        return Err(InhomError::Terminated);
    }
    let positive = b0.is_positive();
    let (c0, a0) = (cell.c().0.clone(), cell.a0());
    let babs = b0.abs();
    let one = BigInt::one();
    // h counts how far the crossing side extends before meeting the
    // vertical axis, k how far the opposite side extends; both at least 1,
    // ties resolved by the inclusive inequalities.
    let (h, k) = if positive {
        let h = (-&c0).floor_div(&babs)?;
        let k = std::cmp::max(one.clone(), (&a0 + &c0).checked_div(&babs)?.ceil());
        (h, k)
    } else {
        let h = std::cmp::max(one.clone(), (-&c0).checked_div(&babs)?.ceil());
        let k = (&a0 + &c0).floor_div(&babs)?;
        (h, k)
    };
    debug_assert!(h.is_positive() && k.is_positive());
    let s = step_aff(positive, &h, &k);
    let next = apply_aff(cell, &s);
    let next = is_divided(&next).unwrap_or_else(|| {
        panic!("divided cell step produced a non-divided cell from {cell:?}")
    });
    // Count boundary alternatives: neighboring (h, k) pairs that also land
    // on a divided cell. Nonzero only when the origin sits on a box edge.
    let mut alternatives = 0u8;
    for (dh, dk) in [(-1, 0), (1, 0), (0, -1), (0, 1), (-1, 1), (1, -1)] {
        let (h2, k2) = (&h + BigInt::from(dh), &k + BigInt::from(dk));
        if !h2.is_positive() || !k2.is_positive() {
            continue;
        }
        let cand = apply_aff(cell, &step_aff(positive, &h2, &k2));
        if is_divided(&cand).is_some() {
            alternatives += 1;
        }
    }
    let choice = StepChoice {
        h,
        k,
        direction: Direction::Forward,
        branch: if positive { 1 } else { -1 },
        alternatives,
    };
    Ok((next, choice, s))
}

/// One forward step of the divided cell algorithm.
pub fn step_forward(dc: &DividedCell) -> Result<(DividedCell, StepChoice), InhomError> {
    let (next, choice, _) = step_forward_detail(dc)?;
    Ok((next, choice))
}

/// Swap the two rows and the two generator columns, exchanging the roles of
/// the axes. Divided cells map to divided cells.
fn swap_axes(cell: &Cell) -> Cell {
    let g1 = (cell.g2().1.clone(), cell.g2().0.clone());
    let g2 = (cell.g1().1.clone(), cell.g1().0.clone());
    let c = (cell.c().1.clone(), cell.c().0.clone());
    Cell::new(g1, g2, c).expect("axis swap preserves the determinant")
}

/// The backward step with its column operation.
pub fn step_backward_detail(
    dc: &DividedCell,
) -> Result<(DividedCell, StepChoice, Aff3), InhomError> {
    if dc.cell().a1().is_zero() {
        return Err(InhomError::Terminated);
    }
    let branch = dc.cell().a1().signum() as i8;
    let swapped = trusted_divided(swap_axes(dc.cell()));
    let (next, choice, s) = step_forward_detail(&swapped)?;
    let back = trusted_divided(swap_axes(next.cell()));
    let choice = StepChoice { direction: Direction::Backward, branch, ..choice };
    Ok((back, choice, s.swap_generators()))
}

/// One backward step, implemented by conjugating the forward step with the
/// axis swap.
pub fn step_backward(dc: &DividedCell) -> Result<(DividedCell, StepChoice), InhomError> {
    let (prev, choice, _) = step_backward_detail(dc)?;
    Ok((prev, choice))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SuccessorKind {
    G,
    N,
    /// Boundary shape: `(h+k) |b0| = a0` exactly.
    GAndN,
}

/// One possible successor of an I-reduced basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Successor {
    /// `h + k`, determining the shape of the successor cell.
    #[serde(with = "crate::exactnum::bigint_string")]
    pub shape: BigInt,
    /// `h`, determining the position; different positions of one shape are
    /// lattice translates.
    #[serde(with = "crate::exactnum::bigint_string")]
    pub position: BigInt,
    #[serde(with = "crate::exactnum::bigint_string")]
    pub k: BigInt,
    pub kind: SuccessorKind,
    /// Successor basis anchored relative to the parent cell based at its
    /// own origin.
    pub cell: Cell,
    /// The successor's inner box in the parent's base-relative coordinates.
    pub box_abs: InnerBox,
}

/// Enumerates all successor positions of an I-reduced basis: every `(h, k)`
/// with `h, k >= 1` whose successor box meets the parent's inner box. The
/// union of the returned boxes covers the parent box, and the N-position
/// count exceeds the G-position count by one.
pub fn successors(basis: &Cell) -> Result<Vec<Successor>, InhomError> {
    let cell = basis.normalize();
    if !is_i_reduced(&cell) {
        return Err(InhomError::NotReduced);
    }
    let b0 = cell.b0();
    if b0.is_zero() {
        return Err(InhomError::Terminated);
    }
    // Anchor the parent at its own base vertex.
    let parent = Cell::new(cell.g1().clone(), cell.g2().clone(), (Surd::zero(), Surd::zero()))
        .expect("nonzero determinant");
    let parent_box = inner_box(&parent)?;
    let a0 = parent.a0();
    let babs = b0.abs();
    let ratio = &a0 / &babs;
    let lo = std::cmp::max(BigInt::from(2), (&ratio - &Surd::one()).ceil());
    let hi = (&ratio + &Surd::one()).floor();
    let positive = b0.is_positive();
    let mut out = Vec::new();
    let mut shape = lo;
    while shape <= hi {
        let sb = &Surd::from_rational(crate::exactnum::Rational::from_integer(shape.clone()))
            * &babs;
        let kind = match (&sb - &a0).signum() {
            s if s > 0 => SuccessorKind::N,
            s if s < 0 => SuccessorKind::G,
            _ => SuccessorKind::GAndN,
        };
        let mut h = BigInt::one();
        while &h < &shape {
            let k = &shape - &h;
            let scell = apply_aff(&parent, &step_aff(positive, &h, &k));
            let sbox = inner_box(&scell)?.absolute(&scell);
            let meets = {
                let ok = |lo1: &Surd, hi1: &Surd, lo2: &Surd, hi2: &Surd| {
                    (hi1 - lo2).signum() >= 0 && (hi2 - lo1).signum() >= 0
                };
                ok(&sbox.xi_lo, &sbox.xi_hi, &parent_box.xi_lo, &parent_box.xi_hi)
                    && ok(&sbox.eta_lo, &sbox.eta_hi, &parent_box.eta_lo, &parent_box.eta_hi)
            };
            if meets {
                out.push(Successor {
                    shape: shape.clone(),
                    position: h.clone(),
                    k,
                    kind,
                    cell: scell,
                    box_abs: sbox,
                });
            }
            h += 1;
        }
        shape += 1;
    }
    // Left to right by box position.
    out.sort_by(|a, b| a.box_abs.xi_lo.partial_cmp(&b.box_abs.xi_lo).unwrap());
    Ok(out)
}

/// Exact test that `boxes` jointly cover `parent`: the plane is cut into
/// strips at every box edge and each strip must be covered in full height.
pub fn boxes_cover(parent: &InnerBox, boxes: &[InnerBox]) -> bool {
    if parent.width().is_negative() || parent.height().is_negative() {
        return true;
    }
    let mut cuts: Vec<Surd> = vec![parent.xi_lo.clone(), parent.xi_hi.clone()];
    for b in boxes {
        for x in [&b.xi_lo, &b.xi_hi] {
            if (x - &parent.xi_lo).signum() > 0 && (&parent.xi_hi - x).signum() > 0 {
                cuts.push(x.clone());
            }
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();
    let half = Surd::from_rational(crate::exactnum::Rational::new(
        BigInt::one(),
        BigInt::from(2),
    ));
    for w in cuts.windows(2) {
        let mid = &(&w[0] + &w[1]) * &half;
        // Intervals of boxes whose xi-range contains the strip.
        let mut spans: Vec<(Surd, Surd)> = boxes
            .iter()
            .filter(|b| (&mid - &b.xi_lo).signum() >= 0 && (&b.xi_hi - &mid).signum() >= 0)
            .map(|b| (b.eta_lo.clone(), b.eta_hi.clone()))
            .collect();
        spans.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut cur = parent.eta_lo.clone();
        for (lo, hi) in spans {
            if (&lo - &cur).signum() > 0 {
                return false;
            }
            if (&hi - &cur).signum() > 0 {
                cur = hi;
            }
            if (&cur - &parent.eta_hi).signum() >= 0 {
                break;
            }
        }
        if (&cur - &parent.eta_hi).signum() < 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::sampling;

    fn s(text: &str) -> Surd {
        text.parse().unwrap()
    }

    fn fig2_cell() -> DividedCell {
        is_divided(
            &Cell::new(
                (s("1+sqrt(3)"), s("1-sqrt(3)")),
                (s("1"), s("1")),
                (s("-1-1/2*sqrt(3)"), s("-1+1/2*sqrt(3)")),
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn forward_step_matches_worked_example() {
        let (next, choice) = step_forward(&fig2_cell()).unwrap();
        assert_eq!(choice.h, BigInt::one());
        assert_eq!(choice.k, BigInt::one());
        assert_eq!(choice.branch, 1);
        assert_eq!(next.cell().g1(), &(s("1"), s("1")));
        assert_eq!(next.cell().g2(), &(s("1-sqrt(3)"), s("1+sqrt(3)")));
        assert_eq!(next.cell().c(), &(s("-1+1/2*sqrt(3)"), s("-1-1/2*sqrt(3)")));
        let class = super::super::classify(next.cell());
        assert!(class.gaussian && !class.non_gaussian);
    }

    #[test]
    fn axis_parallel_side_terminates() {
        // Minkowski cell: generators on the axes.
        let dc = is_divided(
            &Cell::new((s("1"), s("0")), (s("0"), s("1")), (s("-1/2"), s("-1/2"))).unwrap(),
        )
        .unwrap();
        assert_eq!(step_forward(&dc).unwrap_err(), InhomError::Terminated);
        assert_eq!(step_backward(&dc).unwrap_err(), InhomError::Terminated);
    }

    #[test]
    fn backward_inverts_forward_on_vertex_sets() {
        let dc = fig2_cell();
        let (next, _) = step_forward(&dc).unwrap();
        let (back, choice) = step_backward(&next).unwrap();
        assert_eq!(choice.direction, Direction::Backward);
        assert_eq!(back.cell().vertex_set(), dc.cell().vertex_set());
        assert_eq!(back.cell().delta(), dc.cell().delta());
    }

    #[test]
    fn mirrored_branch_steps_are_divided() {
        // Mirror of the figure cell: b0 < 0.
        let cell = Cell::new(
            (s("1+sqrt(3)"), s("-1+sqrt(3)")),
            (s("-1"), s("1")),
            (s("-1/2*sqrt(3)"), s("-1/2*sqrt(3)")),
        )
        .unwrap();
        let dc = is_divided(&cell).expect("mirrored cell is divided");
        let (next, choice) = step_forward(&dc).unwrap();
        assert_eq!(choice.branch, -1);
        assert_eq!(choice.h, BigInt::one());
        assert_eq!(choice.k, BigInt::one());
        assert_eq!(next.cell().delta(), dc.cell().delta());
        let (back, _) = step_backward(&next).unwrap();
        assert_eq!(back.cell().vertex_set(), dc.cell().vertex_set());
    }

    #[test]
    fn step_choice_bound_holds_on_random_cells() {
        let mut rng = sampling::rng(41);
        for _ in 0..60 {
            let d = [2u64, 3, 5][rand::Rng::gen_range(&mut rng, 0..3)];
            let dc = sampling::random_divided_cell(&mut rng, d);
            let Ok((next, choice)) = step_forward(&dc) else { continue };
            let sigma = Surd::from_rational(Rational::from_integer(&choice.h + &choice.k));
            let babs = dc.cell().b0().abs();
            let a0 = dc.cell().a0();
            let lowest = &(&sigma - &Surd::one()) * &babs;
            let highest = &(&sigma + &Surd::one()) * &babs;
            assert!((&a0 - &lowest).signum() >= 0, "lower step bound violated");
            assert!((&highest - &a0).signum() >= 0, "upper step bound violated");
            // Forward then backward restores the vertex set.
            let (back, _) = step_backward(&next).unwrap();
            assert_eq!(back.cell().vertex_set(), dc.cell().vertex_set());
        }
    }

    #[test]
    fn successor_shapes_for_golden_ratio_basis() {
        // a0 / |b0| = 2 + sqrt(5), the worked ratio.
        let basis = Cell::new(
            (s("2+sqrt(5)"), s("1/2-1/2*sqrt(5)")),
            (s("1"), s("1")),
            (Surd::zero(), Surd::zero()),
        )
        .unwrap();
        let succ = successors(&basis).unwrap();
        let shapes: Vec<i64> = succ.iter().map(|s| i64::try_from(&s.shape).unwrap()).collect();
        let g: Vec<_> = succ.iter().filter(|s| s.kind == SuccessorKind::G).collect();
        let n: Vec<_> = succ.iter().filter(|s| s.kind == SuccessorKind::N).collect();
        assert!(shapes.iter().all(|&s| s == 4 || s == 5));
        assert!(g.iter().all(|s| s.shape == BigInt::from(4)));
        assert!(n.iter().all(|s| s.shape == BigInt::from(5)));
        assert_eq!(n.len(), g.len() + 1);
        // The leftmost successor is an N-cell with h = 1.
        assert_eq!(succ[0].kind, SuccessorKind::N);
        assert_eq!(succ[0].position, BigInt::one());
        // Exact covering of the parent box.
        let parent = Cell::new(basis.g1().clone(), basis.g2().clone(), (Surd::zero(), Surd::zero()))
            .unwrap();
        let pbox = inner_box(&parent).unwrap();
        let boxes: Vec<InnerBox> = succ.iter().map(|s| s.box_abs.clone()).collect();
        assert!(boxes_cover(&pbox, &boxes));
    }

    #[test]
    fn narrow_ratio_has_single_n_successor() {
        // 1 < a0/|b0| < 2: scaled variant of the backward-anchor data.
        let basis = Cell::new(
            (s("3+sqrt(5)"), s("-1")),
            (s("-4"), s("3+sqrt(5)")),
            (Surd::zero(), Surd::zero()),
        )
        .unwrap();
        let succ = successors(&basis).unwrap();
        assert_eq!(succ.len(), 1);
        assert_eq!(succ[0].kind, SuccessorKind::N);
        assert_eq!(succ[0].position, BigInt::one());
        assert_eq!(succ[0].k, BigInt::one());
    }

    #[test]
    fn successor_boxes_abut_without_gaps() {
        let basis = Cell::new(
            (s("2+sqrt(5)"), s("1/2-1/2*sqrt(5)")),
            (s("1"), s("1")),
            (Surd::zero(), Surd::zero()),
        )
        .unwrap();
        let succ = successors(&basis).unwrap();
        let parent = inner_box(&basis.normalize()).unwrap();
        // Sorted xi-projections abut exactly over the parent box.
        assert!((&succ[0].box_abs.xi_lo - &parent.xi_lo).signum() <= 0);
        for w in succ.windows(2) {
            assert_eq!(w[0].box_abs.xi_hi, w[1].box_abs.xi_lo, "gap between successor boxes");
        }
        assert!((&succ.last().unwrap().box_abs.xi_hi - &parent.xi_hi).signum() >= 0);
    }
}
