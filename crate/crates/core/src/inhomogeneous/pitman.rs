//! The bridge between divided cells and the continued fraction: neighbor
//! cells of a Gaussian cell, existence of divided cells, the two-sided chain
//! of divided cells, and the inhomogeneous Markoff value.

use super::step::{step_backward_detail, step_forward_detail};
use super::{
    apply_aff, classify, divided_conditions, inner_box, is_divided_detail, Aff3, AffineMap,
    Cell, DividedCell, InhomError, Quadrant, StepChoice,
};
use crate::exactnum::Surd;
use crate::homogeneous::{Extended, HomError};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// The two candidate multiplier pairs producing the neighbors of a Gaussian
/// cell. Which pair applies depends on the corner signs; selection is by
/// outcome: both products must be I-reduced N-cells.
fn neighbor_multiplier_pairs() -> [(Aff3, Aff3); 2] {
    [
        // bases (g1+g2, g2) and (g1, g2-g1), the latter re-anchored by g1
        (
            Aff3::from_i64([[1, 0], [1, 1]], (0, 0)),
            Aff3::from_i64([[1, -1], [0, 1]], (1, 0)),
        ),
        // bases (g1, g1+g2) and (g1-g2, g2)
        (
            Aff3::from_i64([[1, 1], [0, 1]], (0, 0)),
            Aff3::from_i64([[1, 0], [-1, 1]], (0, 0)),
        ),
    ]
}

fn is_i_reduced_n_cell(cell: &Cell) -> bool {
    if !cell.is_normalized() {
        return false;
    }
    let class = classify(cell);
    class.i_reduced && class.non_gaussian
}

pub(crate) fn neighbors_detail(g: &Cell) -> Result<((Cell, Aff3), (Cell, Aff3)), InhomError> {
    let cell = g.normalize();
    let class = classify(&cell);
    if !class.gaussian || !class.i_reduced {
        return Err(InhomError::NotGaussian);
    }
    for (t1, t2) in neighbor_multiplier_pairs() {
        let n1 = apply_aff(&cell, &t1);
        let n2 = apply_aff(&cell, &t2);
        if is_i_reduced_n_cell(&n1) && is_i_reduced_n_cell(&n2) {
            return Ok(((n1, t1), (n2, t2)));
        }
    }
    unreachable!("one multiplier pair applies to every Gaussian cell")
}

/// The two I-reduced N-cells sharing the lattice of a Gaussian cell. Their
/// inner boxes together with the Gaussian cell's own box tile a fundamental
/// domain: the three areas sum to delta and the interiors are disjoint
/// modulo lattice translation.
pub fn neighbors(g: &Cell) -> Result<(Cell, Cell), InhomError> {
    let ((n1, _), (n2, _)) = neighbors_detail(g)?;
    Ok((n1, n2))
}

/// A divided cell for a problem, with the column operation mapping its cell
/// coordinates back to the problem's lattice coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InitialCell {
    pub dc: DividedCell,
    pub anchor: AffineMap,
    /// True when the viewing origin is itself a lattice point; the cell is
    /// then a boundary cell and the Markoff value is infinite.
    pub origin_is_lattice_point: bool,
}

fn aff_to_map(aff: &Aff3) -> AffineMap {
    AffineMap {
        u: crate::homogeneous::UniMat {
            m: [
                [aff.lin[0][0].clone(), aff.lin[0][1].clone()],
                [aff.lin[1][0].clone(), aff.lin[1][1].clone()],
            ],
        },
        t: aff.tr.clone(),
    }
}

/// Lattice coordinates of the viewing origin relative to a cell's base
/// vertex, as exact surds.
fn origin_in_cell_coords(cell: &Cell) -> (Surd, Surd) {
    let det = cell.det();
    let (c0, c1) = (&cell.c().0, &cell.c().1);
    // solve g1*x + g2*y = -c
    let x = &(&(&cell.b1() * &-c0) - &(&cell.b0() * &-c1)) / &det;
    let y = &(&(&cell.a0() * &-c1) - &(&cell.a1() * &-c0)) / &det;
    (x, y)
}

/// Finds a divided cell for the problem by reducing the linear part,
/// forming the Gaussian cell and its two neighbors, and picking the box
/// (and lattice translate) containing the origin. Ties on box boundaries
/// resolve in the order G, first neighbor, second neighbor, then by
/// translate.
pub fn initial_cell(problem: &Cell) -> Result<InitialCell, InhomError> {
    let lin = problem.linear_part();
    let (_, u) = lin.reduce().map_err(InhomError::Hom)?;
    let base_aff = Aff3 {
        lin: [
            [u.m[0][0].clone(), u.m[0][1].clone()],
            [u.m[1][0].clone(), u.m[1][1].clone()],
        ],
        tr: (BigInt::from(0), BigInt::from(0)),
    };
    let g_cell = apply_aff(problem, &base_aff);
    debug_assert!(g_cell.is_normalized());
    let (w_x, w_y) = origin_in_cell_coords(&g_cell);
    let origin_is_lattice_point = w_x.is_integer() && w_y.is_integer();
    let ((_, t1), (_, t2)) = neighbors_detail(&g_cell)?;
    let candidates = [Aff3::from_i64([[1, 0], [0, 1]], (0, 0)), t1, t2];
    let (fx, fy) = (w_x.floor(), w_y.floor());
    for t in &candidates {
        for dp in -3..=3i64 {
            for dq in -3..=3i64 {
                let p = &fx + BigInt::from(dp);
                let q = &fy + BigInt::from(dq);
                let aff = base_aff.then(&Aff3::translation(&p, &q)).then(t);
                let cand = apply_aff(problem, &aff);
                debug_assert!(cand.is_normalized());
                if divided_conditions(&cand) {
                    return Ok(InitialCell {
                        dc: super::trusted_divided(cand),
                        anchor: aff_to_map(&aff),
                        origin_is_lattice_point,
                    });
                }
            }
        }
    }
    unreachable!("the three-box fundamental domain contains every origin")
}

/// Where a chain stops in one direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainEnd {
    /// The requested depth was reached.
    Depth,
    /// A generator is parallel to an axis; the chain is finite this way.
    Terminated,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexInfo {
    pub quadrant: Quadrant,
    #[serde(with = "crate::exactnum::bigint_pair_string")]
    pub lattice: (BigInt, BigInt),
    pub viewing: (Surd, Surd),
    pub value: Extended,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainStep {
    pub index: i64,
    pub dc: DividedCell,
    /// The step taken from this cell to the next one in the record, when
    /// the record extends past this cell.
    pub choice_to_next: Option<StepChoice>,
    pub anchor: AffineMap,
    /// `delta / |xi eta|` at the four vertices, in the order base, base+g1,
    /// base+g2, base+g1+g2.
    pub vertex_values: [Extended; 4],
    /// Inner box width and height.
    pub box_dims: (Surd, Surd),
}

impl ChainStep {
    pub fn vertex_infos(&self) -> [VertexInfo; 4] {
        let qv = self.dc.quadrant_vertices();
        let coords = DividedCell::vertex_cell_coords();
        let mut out = Vec::with_capacity(4);
        for (i, (q, (xi, eta))) in qv.into_iter().enumerate() {
            let (cx, cy) = coords[i];
            out.push(VertexInfo {
                quadrant: q,
                lattice: self.anchor.apply_i64(cx, cy),
                viewing: (xi, eta),
                value: self.vertex_values[i].clone(),
            });
        }
        out.try_into().expect("exactly four vertices")
    }
}

/// The chain of divided cells around the initial cell, with the six related
/// chains recorded: cells, boxes (as dimensions per step) and the four
/// per-quadrant vertex chains.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainRecord {
    pub delta: Surd,
    pub steps: Vec<ChainStep>,
    pub back_end: ChainEnd,
    pub fwd_end: ChainEnd,
    /// Vertex chains for Q1..Q4 in that order, consecutive duplicates
    /// removed.
    pub quadrant_chains: [Vec<VertexInfo>; 4],
    pub origin_is_lattice_point: bool,
}

fn vertex_values(delta: &Surd, dc: &DividedCell) -> [Extended; 4] {
    let [v00, v10, v01, v11] = dc.cell().vertices();
    let val = |(xi, eta): &(Surd, Surd)| {
        let f = (&(xi * eta)).abs();
        if f.is_zero() {
            Extended::Infinite
        } else {
            Extended::Finite(delta / &f)
        }
    };
    [val(&v00), val(&v10), val(&v01), val(&v11)]
}

/// Builds the two-sided chain, `n_back` cells behind the initial cell and
/// `n_fwd` ahead, stopping early with a terminated marker when a generator
/// lies on an axis.
pub fn chain(problem: &Cell, n_back: u32, n_fwd: u32) -> Result<ChainRecord, InhomError> {
    let init = match initial_cell(problem) {
        Ok(init) => init,
        // Problems with an axis-parallel lattice direction have no reduced
        // linear part, but may still present a divided cell directly (the
        // classical bounded examples do). The chain then terminates at once
        // in the blocked directions.
        Err(InhomError::Hom(HomError::Degenerate(x, y))) => {
            match is_divided_detail(problem) {
                Some((dc, aff)) => InitialCell {
                    origin_is_lattice_point: {
                        let (wx, wy) = origin_in_cell_coords(dc.cell());
                        wx.is_integer() && wy.is_integer()
                    },
                    dc,
                    anchor: aff_to_map(&aff),
                },
                None => return Err(InhomError::Hom(HomError::Degenerate(x, y))),
            }
        }
        Err(e) => return Err(e),
    };
    let delta = problem.delta();
    let mut entries = std::collections::VecDeque::new();
    entries.push_back((0i64, init.dc.clone(), aff_of(&init)));
    let mut fwd_end = ChainEnd::Depth;
    let mut cur = init.dc.clone();
    let mut anchor = aff_of(&init);
    for i in 1..=n_fwd as i64 {
        match step_forward_detail(&cur) {
            Ok((next, _, s)) => {
                anchor = anchor.compose(&s);
                cur = next.clone();
                entries.push_back((i, next, anchor.clone()));
            }
            Err(InhomError::Terminated) => {
                fwd_end = ChainEnd::Terminated;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let mut back_end = ChainEnd::Depth;
    let mut cur = init.dc.clone();
    let mut anchor = aff_of(&init);
    for i in 1..=n_back as i64 {
        match step_backward_detail(&cur) {
            Ok((prev, _, s)) => {
                anchor = anchor.compose(&s);
                cur = prev.clone();
                entries.push_front((-i, prev, anchor.clone()));
            }
            Err(InhomError::Terminated) => {
                back_end = ChainEnd::Terminated;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let mut steps: Vec<ChainStep> = Vec::with_capacity(entries.len());
    for (index, dc, anchor) in entries {
        let boxy = inner_box(dc.cell())?;
        steps.push(ChainStep {
            index,
            vertex_values: vertex_values(&delta, &dc),
            box_dims: (boxy.width(), boxy.height()),
            choice_to_next: None,
            dc,
            anchor,
        });
    }
    for i in 0..steps.len().saturating_sub(1) {
        let (next, choice, _) = step_forward_detail(&steps[i].dc)?;
        debug_assert_eq!(next.cell(), steps[i + 1].dc.cell());
        steps[i].choice_to_next = Some(choice);
    }
    let mut quadrant_chains: [Vec<VertexInfo>; 4] = Default::default();
    for st in &steps {
        for info in st.vertex_infos() {
            let slot = match info.quadrant {
                Quadrant::Q1 => 0,
                Quadrant::Q2 => 1,
                Quadrant::Q3 => 2,
                Quadrant::Q4 => 3,
            };
            let chain = &mut quadrant_chains[slot];
            if chain.last().map(|last| last.lattice == info.lattice) != Some(true) {
                chain.push(info);
            }
        }
    }
    Ok(ChainRecord {
        delta,
        steps,
        back_end,
        fwd_end,
        quadrant_chains,
        origin_is_lattice_point: init.origin_is_lattice_point,
    })
}

fn aff_of(init: &InitialCell) -> AffineMap {
    init.anchor.clone()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InhomMarkoff {
    pub value: Extended,
    #[serde(with = "crate::exactnum::bigint_pair_string")]
    pub vertex_lattice: (BigInt, BigInt),
    pub vertex_viewing: (Surd, Surd),
    pub exact: bool,
}

/// `M_I(F_I)` with the default oracle fallback window.
pub fn markoff_inhom(problem: &Cell, depth: u32) -> Result<InhomMarkoff, InhomError> {
    markoff_inhom_with_window(problem, depth, 10)
}

/// Supremum of `delta / |F_I|` over the lattice, computed from the chain
/// vertices. Exact when period detection closes a cycle in both directions
/// (the value over one period repeats); otherwise a certified lower bound.
/// Problems without a chain (axis-parallel lattice directions) fall back to
/// the brute-force oracle over `|x|, |y| <= window`, reported inexact.
pub fn markoff_inhom_with_window(
    problem: &Cell,
    depth: u32,
    window: u32,
) -> Result<InhomMarkoff, InhomError> {
    let delta = problem.delta();
    let init = match initial_cell(problem) {
        Ok(init) => init,
        Err(InhomError::Hom(HomError::Degenerate(_, _))) => {
            let w = crate::oracle::Window::new(window, 0).expect("margin 0");
            let (min, argmins) = crate::oracle::brute_min(problem, &w);
            let (x, y) = argmins[0].clone();
            let viewing = problem.viewing(&x, &y);
            return Ok(if min.is_zero() {
                InhomMarkoff {
                    value: Extended::Infinite,
                    vertex_lattice: (x, y),
                    vertex_viewing: viewing,
                    exact: true,
                }
            } else {
                InhomMarkoff {
                    value: Extended::Finite(&delta / &min),
                    vertex_lattice: (x, y),
                    vertex_viewing: viewing,
                    exact: false,
                }
            });
        }
        Err(e) => return Err(e),
    };
    // State key quotienting out scale: both rows normalized to unit leading
    // entry, translation column included.
    let key_of = |cell: &Cell| -> (Surd, Surd, Surd, Surd) {
        let a0 = cell.a0();
        let b1 = cell.b1();
        (
            &cell.b0() / &a0,
            &cell.a1() / &b1,
            &cell.c().0 / &a0,
            &cell.c().1 / &b1,
        )
    };
    let mut best: Option<(Surd, (BigInt, BigInt), (Surd, Surd))> = None;
    let mut infinite: Option<((BigInt, BigInt), (Surd, Surd))> = None;
    let mut consider = |dc: &DividedCell, anchor: &AffineMap| {
        let coords = DividedCell::vertex_cell_coords();
        for (i, (xi, eta)) in dc.cell().vertices().into_iter().enumerate() {
            let f = (&(&xi * &eta)).abs();
            let lattice = anchor.apply_i64(coords[i].0, coords[i].1);
            if f.is_zero() {
                infinite.get_or_insert((lattice, (xi, eta)));
                continue;
            }
            let v = &delta / &f;
            let better = match &best {
                Some((cur, _, _)) => v.partial_cmp(cur).unwrap() == std::cmp::Ordering::Greater,
                None => true,
            };
            if better {
                best = Some((v, lattice, (xi, eta)));
            }
        }
    };
    let mut closed = [false, false];
    for (dir, closed_flag) in [(true, 0usize), (false, 1usize)] {
        let mut dc = init.dc.clone();
        let mut anchor = init.anchor.clone();
        let mut seen: Vec<(Surd, Surd, Surd, Surd)> = Vec::new();
        for _ in 0..depth {
            let key = key_of(dc.cell());
            if seen.contains(&key) {
                closed[closed_flag] = true;
                break;
            }
            seen.push(key);
            consider(&dc, &anchor);
            let stepped = if dir { step_forward_detail(&dc) } else { step_backward_detail(&dc) };
            match stepped {
                Ok((next, _, s)) => {
                    anchor = anchor.compose(&s);
                    dc = next;
                }
                Err(InhomError::Terminated) => {
                    closed[closed_flag] = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
    }
    if init.origin_is_lattice_point || infinite.is_some() {
        let (lattice, viewing) = infinite.unwrap_or_else(|| {
            let (wx, wy) = origin_in_cell_coords(init.dc.cell());
            let lattice = init.anchor.apply(&wx.floor(), &wy.floor());
            (lattice, (Surd::zero(), Surd::zero()))
        });
        return Ok(InhomMarkoff {
            value: Extended::Infinite,
            vertex_lattice: lattice,
            vertex_viewing: viewing,
            exact: true,
        });
    }
    let (value, vertex_lattice, vertex_viewing) =
        best.expect("depth >= 1 visits the initial cell");
    Ok(InhomMarkoff {
        value: Extended::Finite(value),
        vertex_lattice,
        vertex_viewing,
        exact: closed[0] && closed[1],
    })
}
