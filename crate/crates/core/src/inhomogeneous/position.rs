//! Chain positions without chain walking: anchors of superfluous cells and
//! the continued-fraction index of a divided cell.
//!
//! Every divided cell is pinned to a reduced basis of the problem's linear
//! part: a Gaussian cell directly, a neighbor through the inverse of its
//! multiplier, and a superfluous cell through its forward anchor. Two cells
//! of one problem can then be ordered by comparing these positions instead
//! of stepping through the chain between them.

use super::step::{step_backward_detail, step_forward_detail};
use super::{classify, Cell, DividedCell, InhomError};
use crate::exactnum::Surd;
use crate::homogeneous::HomForm;
use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

const ANCHOR_GUARD: usize = 1_000_000;
const INDEX_GUARD: usize = 4096;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Anchors {
    pub backward: DividedCell,
    pub forward: DividedCell,
    /// The full run from the backward anchor to the forward anchor; all
    /// interior cells are superfluous and share one inner box.
    pub run: Vec<DividedCell>,
}

fn wide(cell: &Cell) -> bool {
    // |a0| >= 2 |b0|: the forward anchor condition.
    let two = Surd::from_int(2);
    (&cell.a0().abs() - &(&two * &cell.b0().abs())).signum() >= 0
}

fn tall(cell: &Cell) -> bool {
    // |b1| >= 2 |a1|: the backward anchor condition.
    let two = Surd::from_int(2);
    (&cell.b1().abs() - &(&two * &cell.a1().abs())).signum() >= 0
}

/// Walks the forced steps out of a superfluous cell in both directions: the
/// forward anchor is the first cell with `|a0| >= 2|b0|`, the backward
/// anchor the first with `|b1| >= 2|a1|`. Both walks are finite except for
/// the degenerate fixed-point ratios, which trip the step guard.
pub fn anchors(dc: &DividedCell) -> Result<Anchors, InhomError> {
    if !classify(dc.cell()).superfluous {
        return Err(InhomError::NotSuperfluous);
    }
    let mut run = std::collections::VecDeque::new();
    run.push_back(dc.clone());
    let mut cur = dc.clone();
    for steps in 0.. {
        if steps >= ANCHOR_GUARD {
            return Err(InhomError::Diverged);
        }
        if wide(cur.cell()) {
            break;
        }
        let (next, _, _) = step_forward_detail(&cur)?;
        run.push_back(next.clone());
        cur = next;
    }
    let forward = cur;
    let mut cur = dc.clone();
    for steps in 0.. {
        if steps >= ANCHOR_GUARD {
            return Err(InhomError::Diverged);
        }
        if tall(cur.cell()) {
            break;
        }
        let (prev, _, _) = step_backward_detail(&cur)?;
        run.push_front(prev.clone());
        cur = prev;
    }
    let backward = cur;
    Ok(Anchors { backward, forward, run: run.into() })
}

/// Position of a divided cell relative to the continued-fraction chain of
/// the problem's linear part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellPosition {
    /// Index of the associated reduced basis in the chain of the linear
    /// part (0 = the reduction of the problem as given).
    pub cf_index: i64,
    /// -1: neighbor approaching its basis; 0: the Gaussian cell itself;
    /// +1: neighbor leaving its basis.
    pub slot: i8,
    /// Forced steps remaining to the forward anchor; nonzero only for
    /// superfluous cells.
    pub superfluous_depth: u64,
}

impl CellPosition {
    pub fn sort_key(&self) -> (i64, i8, i64) {
        (self.cf_index, self.slot, -(self.superfluous_depth as i64))
    }
}

/// The corner-flip pairing: a cell basis matches a chain matrix either
/// exactly or with the off-diagonal corners negated (the residual of row
/// sign normalization).
fn matches_mod_corner_flip(x: &HomForm, m: &HomForm) -> bool {
    if x == m {
        return true;
    }
    let (a0, b0, a1, b1) = m.entries();
    let flipped = HomForm::new(a0.clone(), -b0, -a1, b1.clone());
    flipped.map(|f| &f == x).unwrap_or(false)
}

/// Index of a reduced basis in the two-sided chain of `lin`, searching
/// outward from the reduction of `lin`.
fn hom_index(lin: &HomForm, target: &HomForm) -> Result<i64, InhomError> {
    let (m0, _) = lin.reduce()?;
    if matches_mod_corner_flip(target, &m0) {
        return Ok(0);
    }
    let mut fwd = m0.clone();
    let mut bwd = m0;
    for i in 1..=INDEX_GUARD as i64 {
        if let Ok((next, _, _)) = fwd.step_detail() {
            fwd = next;
            if matches_mod_corner_flip(target, &fwd) {
                return Ok(i);
            }
        }
        if let Ok((prev, _, _)) = bwd.step_back_detail() {
            bwd = prev;
            if matches_mod_corner_flip(target, &bwd) {
                return Ok(-i);
            }
        }
    }
    Err(InhomError::Mismatch)
}

/// Checks that the cell belongs to the problem: same lattice (unimodular
/// basis relation) and an integral translation.
fn validate_member(cell: &Cell, problem: &Cell) -> Result<(), InhomError> {
    let det = problem.det();
    let (pa0, pa1) = (problem.a0(), problem.a1());
    let (pb0, pb1) = (problem.b0(), problem.b1());
    let solve = |vx: &Surd, vy: &Surd| -> Option<(BigInt, BigInt)> {
        let p = &(&(&pb1 * vx) - &(&pb0 * vy)) / &det;
        let q = &(&(&pa0 * vy) - &(&pa1 * vx)) / &det;
        if p.is_integer() && q.is_integer() {
            Some((
                p.as_rational().unwrap().to_integer(),
                q.as_rational().unwrap().to_integer(),
            ))
        } else {
            None
        }
    };
    let g1 = solve(&cell.g1().0, &cell.g1().1).ok_or(InhomError::Mismatch)?;
    let g2 = solve(&cell.g2().0, &cell.g2().1).ok_or(InhomError::Mismatch)?;
    let dc0 = &cell.c().0 - &problem.c().0;
    let dc1 = &cell.c().1 - &problem.c().1;
    solve(&dc0, &dc1).ok_or(InhomError::Mismatch)?;
    let det2 = &g1.0 * &g2.1 - &g1.1 * &g2.0;
    if det2.abs() != BigInt::from(1) {
        return Err(InhomError::Mismatch);
    }
    Ok(())
}

fn basis_combination(cell: &Cell, c11: i64, c21: i64, c12: i64, c22: i64) -> Option<HomForm> {
    let lc = |p: i64, q: i64| {
        let ps = Surd::from_int(p);
        let qs = Surd::from_int(q);
        (
            &(&cell.a0() * &ps) + &(&cell.b0() * &qs),
            &(&cell.a1() * &ps) + &(&cell.b1() * &qs),
        )
    };
    let (a0, a1) = lc(c11, c21);
    let (b0, b1) = lc(c12, c22);
    HomForm::new(a0, b0, a1, b1).ok()
}

/// Locates a divided cell against the reduced-basis chain of the problem's
/// linear part. Gaussian cells match a chain matrix directly; neighbors go
/// through the inverse multiplier; superfluous cells through their forward
/// anchor, with the forced distance recorded.
pub fn locate(dc: &DividedCell, problem: &Cell) -> Result<CellPosition, InhomError> {
    validate_member(dc.cell(), problem)?;
    let lin = problem.linear_part();
    locate_inner(dc, &lin)
}

fn locate_inner(dc: &DividedCell, lin: &HomForm) -> Result<CellPosition, InhomError> {
    let cell = dc.cell();
    let class = classify(cell);
    if class.gaussian {
        let index = hom_index(lin, &cell.linear_part())?;
        return Ok(CellPosition { cf_index: index, slot: 0, superfluous_depth: 0 });
    }
    if tall(cell) {
        // Neighbor leaving its basis: invert the second multiplier of
        // either pair, bases (g1, g2 + g1) or (g1, g2 - g1).
        for (c12, c22) in [(1, 1), (-1, 1)] {
            if let Some(g) = basis_combination(cell, 1, 0, c12, c22) {
                if g.is_reduced() {
                    if let Ok(index) = hom_index(lin, &g) {
                        return Ok(CellPosition { cf_index: index, slot: 1, superfluous_depth: 0 });
                    }
                }
            }
        }
        return Err(InhomError::Mismatch);
    }
    if wide(cell) {
        // Neighbor approaching the next basis: bases (g1 - g2, g2) or
        // (g1 + g2, g2).
        for (c11, c21) in [(1, -1), (1, 1)] {
            if let Some(g) = basis_combination(cell, c11, c21, 0, 1) {
                if g.is_reduced() {
                    if let Ok(index) = hom_index(lin, &g) {
                        return Ok(CellPosition { cf_index: index, slot: -1, superfluous_depth: 0 });
                    }
                }
            }
        }
        return Err(InhomError::Mismatch);
    }
    // Superfluous: forced forward walk to the anchor.
    let mut cur = dc.clone();
    let mut depth = 0u64;
    while !wide(cur.cell()) {
        if depth as usize >= ANCHOR_GUARD {
            return Err(InhomError::Diverged);
        }
        let (next, _, _) = step_forward_detail(&cur)?;
        cur = next;
        depth += 1;
    }
    let anchor_pos = locate_inner(&cur, lin)?;
    Ok(CellPosition { superfluous_depth: depth, ..anchor_pos })
}

/// Orders two divided cells of one problem by chain position, without
/// stepping through the chain between them.
pub fn compare_cells(a: &DividedCell, b: &DividedCell, problem: &Cell) -> Result<Ordering, InhomError> {
    let pa = locate(a, problem)?;
    let pb = locate(b, problem)?;
    Ok(pa.sort_key().cmp(&pb.sort_key()))
}

#[cfg(test)]
mod tests {
    use super::super::{inner_box, is_divided, neighbors};
    use super::*;
    use crate::exactnum::Rational;

    fn s(text: &str) -> Surd {
        text.parse().unwrap()
    }

    fn backward_anchor_cell() -> DividedCell {
        // a0/b0 = -(3+sqrt 5)/4, b1/a1 = -(3+sqrt 5): origin at the box
        // center.
        let g1 = (s("3+sqrt(5)"), s("-1"));
        let g2 = (s("-4"), s("3+sqrt(5)"));
        let c = (s("1/2-1/2*sqrt(5)"), s("-1-1/2*sqrt(5)"));
        is_divided(&Cell::new(g1, g2, c).unwrap()).expect("anchor cell is divided")
    }

    #[test]
    fn anchor_run_from_worked_ratios() {
        let c_minus = backward_anchor_cell();
        // One forward step lands on a superfluous cell.
        let (sup, _, _) = step_forward_detail(&c_minus).unwrap();
        assert!(classify(sup.cell()).superfluous);
        let anchors = anchors(&sup).unwrap();
        // The backward anchor is the starting cell again.
        assert_eq!(anchors.backward.cell().vertex_set(), c_minus.cell().vertex_set());
        // The forward anchor satisfies the wide condition with a0/b0 < -2.
        let fa = anchors.forward.cell();
        let ratio = &fa.a0() / &fa.b0();
        assert!((&ratio + &Surd::from_int(2)).signum() <= 0);
        // All run cells share one inner box, exactly.
        let boxes: Vec<_> = anchors
            .run
            .iter()
            .map(|dc| inner_box(dc.cell()).unwrap().absolute(dc.cell()))
            .collect();
        for b in &boxes[1..] {
            assert_eq!(b, &boxes[0]);
        }
        // Interior cells are superfluous.
        for dc in &anchors.run[1..anchors.run.len() - 1] {
            assert!(classify(dc.cell()).superfluous);
        }
    }

    #[test]
    fn non_superfluous_cells_are_rejected() {
        let c_minus = backward_anchor_cell();
        assert_eq!(anchors(&c_minus).unwrap_err(), InhomError::NotSuperfluous);
    }

    #[test]
    fn locate_orders_consecutive_chain_cells() {
        let problem = Cell::new(
            (s("1"), s("1")),
            (s("sqrt(3)"), s("-sqrt(3)")),
            (s("-1-1/2*sqrt(3)"), s("-1+1/2*sqrt(3)")),
        )
        .unwrap();
        let record = super::super::chain(&problem, 3, 3).unwrap();
        let keys: Vec<_> = record
            .steps
            .iter()
            .map(|st| locate(&st.dc, &problem).unwrap().sort_key())
            .collect();
        for w in keys.windows(2) {
            assert!(w[0] < w[1], "chain order violated: {:?} !< {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn gaussian_cell_and_its_departing_neighbor_share_an_index() {
        // Origin on the shared box edge, so that both the Gaussian cell and
        // its departing neighbor are (boundary) divided cells of one
        // problem.
        let g = Cell::new(
            (s("1+sqrt(3)"), s("1-sqrt(3)")),
            (s("1"), s("1")),
            (
                s("-1-sqrt(3)"),
                Surd::from_rational(Rational::new(BigInt::from(-1), BigInt::from(8))),
            ),
        )
        .unwrap();
        let (n1, n2) = neighbors(&g).unwrap();
        let problem = g.clone();
        let gdc = is_divided(&g).expect("origin on the box edge");
        let pg = locate(&gdc, &problem).unwrap();
        let departing: Vec<_> = [n1, n2].into_iter().filter(tall).collect();
        assert!(!departing.is_empty());
        let mut checked = 0;
        for n in departing {
            if let Some(ndc) = is_divided(&n) {
                let pn = locate(&ndc, &problem).unwrap();
                assert_eq!(pg.cf_index, pn.cf_index);
                assert!(pg.sort_key() < pn.sort_key());
                checked += 1;
            }
        }
        assert!(checked > 0, "the departing neighbor shares the boundary origin");
    }

    #[test]
    fn foreign_cells_are_mismatched() {
        let problem = Cell::new(
            (s("1"), s("1")),
            (s("sqrt(3)"), s("-sqrt(3)")),
            (s("-1-1/2*sqrt(3)"), s("-1+1/2*sqrt(3)")),
        )
        .unwrap();
        let other = is_divided(&Cell::new(
            (s("1"), s("0")),
            (s("0"), s("1")),
            (s("-1/2"), s("-1/2")),
        )
        .unwrap())
        .unwrap();
        assert_eq!(locate(&other, &problem).unwrap_err(), InhomError::Mismatch);
    }
}
