//! Brute-force ground truth over a finite lattice window.
//!
//! Everything here is deliberately simple: exhaustive scans, explicit edge
//! lists and exact arithmetic, so that the structured algorithms can be
//! checked against an independent path. The partial orders follow the
//! geometry: within one closed quadrant a point closer to both axes is
//! smaller (basic), and on a lattice line meeting a quadrant in a bounded
//! segment, of two points on the same side of the line's |F| maximum the
//! one farther from the maximum is smaller (extended, with transitive
//! closure implied by reachability).

use crate::exactnum::{Rational, Surd};
use crate::inhomogeneous::{Cell, Quadrant};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("window margin must be smaller than the window radius")]
    BadWindow,
    #[error("line does not meet the quadrant in a bounded interval")]
    Unbounded,
    #[error("line misses the quadrant")]
    NoIntersection,
}

/// A square lattice window `|x| <= n`, `|y| <= n` with a certification
/// margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    n: u32,
    margin: u32,
}

impl Window {
    pub fn new(n: u32, margin: u32) -> Result<Window, OracleError> {
        if margin >= n {
            return Err(OracleError::BadWindow);
        }
        Ok(Window { n, margin })
    }

    pub fn radius(&self) -> u32 {
        self.n
    }

    pub fn margin(&self) -> u32 {
        self.margin
    }

    fn points(&self) -> impl Iterator<Item = (i64, i64)> {
        let n = self.n as i64;
        (-n..=n).flat_map(move |x| (-n..=n).map(move |y| (x, y)))
    }
}

/// Exact minimum of `|F_I|` over the window, with every minimizer.
pub fn brute_min(problem: &Cell, w: &Window) -> (Surd, Vec<(BigInt, BigInt)>) {
    brute_min_impl(problem, w, false)
}

/// Like [`brute_min`] but skipping the lattice origin, for homogeneous
/// problems.
pub fn brute_min_excluding_origin(problem: &Cell, w: &Window) -> (Surd, Vec<(BigInt, BigInt)>) {
    brute_min_impl(problem, w, true)
}

fn brute_min_impl(problem: &Cell, w: &Window, skip_origin: bool) -> (Surd, Vec<(BigInt, BigInt)>) {
    let mut best: Option<Surd> = None;
    let mut argmins: Vec<(BigInt, BigInt)> = Vec::new();
    for (x, y) in w.points() {
        if skip_origin && x == 0 && y == 0 {
            continue;
        }
        let v = problem.eval_i64(x, y).abs();
        let cmp = best.as_ref().map(|b| v.partial_cmp(b).unwrap());
        match cmp {
            None | Some(std::cmp::Ordering::Less) => {
                best = Some(v);
                argmins = vec![(BigInt::from(x), BigInt::from(y))];
            }
            Some(std::cmp::Ordering::Equal) => argmins.push((BigInt::from(x), BigInt::from(y))),
            Some(std::cmp::Ordering::Greater) => {}
        }
    }
    (best.expect("window is nonempty"), argmins)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineMax {
    /// Parameter of the maximum along `point + t * dir`.
    pub t: Surd,
    pub location: (Surd, Surd),
    pub value: Surd,
}

/// The unique interior maximum of `|F_I|` on the bounded segment where the
/// lattice line `point + t * dir` meets the quadrant. `|F_I|` vanishes at
/// the segment endpoints and decreases from the maximum toward either axis.
pub fn line_max(
    problem: &Cell,
    point: (i64, i64),
    dir: (i64, i64),
    quadrant: Quadrant,
) -> Result<LineMax, OracleError> {
    let p = problem.viewing(&BigInt::from(point.0), &BigInt::from(point.1));
    let q = problem.viewing(&BigInt::from(point.0 + dir.0), &BigInt::from(point.1 + dir.1));
    let dxi = &q.0 - &p.0;
    let deta = &q.1 - &p.1;
    let (lo, hi) = quadrant_interval(&p, &(dxi.clone(), deta.clone()), quadrant)?;
    if (&hi - &lo).signum() < 0 {
        return Err(OracleError::NoIntersection);
    }
    // Roots of xi(t) * eta(t); the parabola opens downward in between.
    let t_xi = &(-&p.0) / &dxi;
    let t_eta = &(-&p.1) / &deta;
    let half = Surd::from_rational(Rational::new(BigInt::from(1), BigInt::from(2)));
    let t = &(&t_xi + &t_eta) * &half;
    let xi = &p.0 + &(&dxi * &t);
    let eta = &p.1 + &(&deta * &t);
    let value = (&(&xi * &eta)).abs();
    Ok(LineMax { t, location: (xi, eta), value })
}

/// The t-interval of the closed quadrant along `p + t d`, or an error when
/// it is unbounded.
fn quadrant_interval(
    p: &(Surd, Surd),
    d: &(Surd, Surd),
    quadrant: Quadrant,
) -> Result<(Surd, Surd), OracleError> {
    let (want_xi, want_eta) = match quadrant {
        Quadrant::Q1 => (1, 1),
        Quadrant::Q2 => (-1, 1),
        Quadrant::Q3 => (-1, -1),
        Quadrant::Q4 => (1, -1),
    };
    let mut lo: Option<Surd> = None;
    let mut hi: Option<Surd> = None;
    for (val, slope, want) in [(&p.0, &d.0, want_xi), (&p.1, &d.1, want_eta)] {
        // Constraint: sign(val + t * slope) agrees with `want` (closed).
        match slope.signum() * want {
            0 => {
                if val.signum() * want < 0 {
                    return Err(OracleError::NoIntersection);
                }
                // Constant coordinate with the right sign: no bound from
                // this constraint, so the interval cannot be bounded.
                return Err(OracleError::Unbounded);
            }
            s => {
                let root = &(-val) / slope;
                if s > 0 {
                    // t >= root
                    if lo.as_ref().map(|l| (&root - l).signum() > 0) != Some(false) {
                        lo = Some(root);
                    }
                } else if hi.as_ref().map(|h| (&root - h).signum() < 0) != Some(false) {
                    hi = Some(root);
                }
            }
        }
    }
    match (lo, hi) {
        (Some(lo), Some(hi)) => Ok((lo, hi)),
        _ => Err(OracleError::Unbounded),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    Basic,
    Extended,
}

/// The dominance relation restricted to a window, as explicit edges.
#[derive(Debug, Clone)]
pub struct OrderRelation {
    pub kind: OrderKind,
    points: Vec<(i64, i64)>,
    index: BTreeMap<(i64, i64), usize>,
    /// Direct predecessors: `below[i]` lists points smaller than point `i`.
    below: Vec<Vec<usize>>,
    viewing: Vec<(Surd, Surd)>,
}

impl OrderRelation {
    /// Builds the relation over the window. Lattice points where `F_I`
    /// vanishes exactly are excluded: they sit on an axis, make the value
    /// infinite, and the homogeneous theory removes them by definition.
    pub fn build(problem: &Cell, w: &Window, kind: OrderKind) -> OrderRelation {
        let (points, viewing): (Vec<(i64, i64)>, Vec<(Surd, Surd)>) = w
            .points()
            .map(|(x, y)| ((x, y), problem.viewing(&BigInt::from(x), &BigInt::from(y))))
            .filter(|(_, (xi, eta))| !xi.is_zero() && !eta.is_zero())
            .unzip();
        let index: BTreeMap<(i64, i64), usize> =
            points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
        basic_edges(&viewing, &mut below);
        if kind == OrderKind::Extended {
            line_edges(problem, &points, &viewing, &mut below);
        }
        OrderRelation { kind, points, index, below, viewing }
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    /// `p <= q` in the reflexive-transitive closure of the direct edges.
    pub fn leq(&self, p: (i64, i64), q: (i64, i64)) -> bool {
        let (Some(&pi), Some(&qi)) = (self.index.get(&p), self.index.get(&q)) else {
            return false;
        };
        if pi == qi {
            return true;
        }
        let mut seen = vec![false; self.points.len()];
        let mut stack = vec![qi];
        seen[qi] = true;
        while let Some(v) = stack.pop() {
            for &u in &self.below[v] {
                if u == pi {
                    return true;
                }
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        false
    }

    /// Minimal points within the window, uncertified.
    pub fn minimal(&self) -> Vec<(i64, i64)> {
        self.points
            .iter()
            .enumerate()
            .filter(|(i, _)| self.below[*i].is_empty())
            .map(|(_, p)| *p)
            .collect()
    }

    /// Minimal points whose potential dominators provably lie inside the
    /// margin-shrunken window, so that window truncation cannot have hidden
    /// a dominator.
    pub fn certified_minimal(&self, problem: &Cell, w: &Window) -> Vec<(i64, i64)> {
        self.points
            .iter()
            .enumerate()
            .filter(|(i, _)| self.below[*i].is_empty())
            .filter(|(i, _)| dominator_region_fits(problem, w, self.kind, &self.viewing[*i]))
            .map(|(_, p)| *p)
            .collect()
    }
}

/// True when every potential dominator of the point provably lies inside
/// the margin-shrunken window. Dominators live in `|xi| <= f |xi(p)|`,
/// `|eta| <= f |eta(p)|` with `f = 1` for the basic order (closer to both
/// axes) and `f = 2` for the extended one (along a quadrant segment the
/// coordinates of a farther-from-maximum point are at most doubled).
pub fn dominator_region_fits(
    problem: &Cell,
    w: &Window,
    kind: OrderKind,
    viewing: &(Surd, Surd),
) -> bool {
    let factor = match kind {
        OrderKind::Basic => 1,
        OrderKind::Extended => 2,
    };
    let reach = BigInt::from(w.radius() - w.margin());
    let delta = problem.delta();
    let (a0, a1) = (problem.a0().abs(), problem.a1().abs());
    let (b0, b1) = (problem.b0().abs(), problem.b1().abs());
    let (xi, eta) = viewing;
    let fx = &xi.abs() * &Surd::from_int(factor);
    let fy = &eta.abs() * &Surd::from_int(factor);
    // Lattice bounding box of the dominator region through the inverse of
    // the linear part.
    let bx = (&(&(&b1 * &fx) + &(&b0 * &fy)) / &delta).ceil();
    let by = (&(&(&a1 * &fx) + &(&a0 * &fy)) / &delta).ceil();
    bx <= reach && by <= reach
}

fn basic_edges(viewing: &[(Surd, Surd)], below: &mut [Vec<usize>]) {
    let n = viewing.len();
    let signs: Vec<(i32, i32)> =
        viewing.iter().map(|(xi, eta)| (xi.signum(), eta.signum())).collect();
    let abs: Vec<(Surd, Surd)> = viewing.iter().map(|(xi, eta)| (xi.abs(), eta.abs())).collect();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            // Some shared closed quadrant.
            if signs[i].0 * signs[j].0 < 0 || signs[i].1 * signs[j].1 < 0 {
                continue;
            }
            let dx = (&abs[i].0 - &abs[j].0).signum();
            let dy = (&abs[i].1 - &abs[j].1).signum();
            // i strictly dominates j when closer to both axes; exact ties
            // are incomparable.
            if dx <= 0 && dy <= 0 && (dx < 0 || dy < 0) {
                below[j].push(i);
            }
        }
    }
}

fn line_edges(
    problem: &Cell,
    points: &[(i64, i64)],
    viewing: &[(Surd, Surd)],
    below: &mut [Vec<usize>],
) {
    // Linear action of the problem on a direction vector.
    let dir_view = |dx: i64, dy: i64| -> (Surd, Surd) {
        let (dxs, dys) = (Surd::from_int(dx), Surd::from_int(dy));
        (
            &(&problem.a0() * &dxs) + &(&problem.b0() * &dys),
            &(&problem.a1() * &dxs) + &(&problem.b1() * &dys),
        )
    };
    let half = Surd::from_rational(Rational::new(BigInt::from(1), BigInt::from(2)));
    for quadrant in Quadrant::ALL {
        let inside: Vec<usize> = (0..points.len())
            .filter(|&i| quadrant.contains(&viewing[i].0, &viewing[i].1))
            .collect();
        // Lattice lines within the quadrant, keyed by primitive direction
        // and cross offset.
        let mut lines: BTreeMap<((i64, i64), i64), Vec<usize>> = BTreeMap::new();
        for (ai, &i) in inside.iter().enumerate() {
            for &j in inside.iter().skip(ai + 1) {
                let (xi, yi) = points[i];
                let (xj, yj) = points[j];
                let (mut dx, mut dy) = (xj - xi, yj - yi);
                let g = dx.gcd(&dy);
                dx /= g;
                dy /= g;
                if dx < 0 || (dx == 0 && dy < 0) {
                    dx = -dx;
                    dy = -dy;
                }
                let cross = dx * yi - dy * xi;
                let entry = lines.entry(((dx, dy), cross)).or_default();
                entry.push(i);
                entry.push(j);
            }
        }
        for (((dx, dy), _), mut members) in lines {
            members.sort_unstable();
            members.dedup();
            if members.len() < 2 {
                continue;
            }
            let base = members[0];
            let (bx, by) = points[base];
            let pview = &viewing[base];
            let dview = dir_view(dx, dy);
            if dview.0.is_zero() || dview.1.is_zero() {
                continue; // axis-parallel: no bounded quadrant segment
            }
            if quadrant_interval(pview, &dview, quadrant).is_err() {
                continue; // unbounded segment: the maximum argument fails
            }
            let t_xi = &(-&pview.0) / &dview.0;
            let t_eta = &(-&pview.1) / &dview.1;
            let t_max = &(&t_xi + &t_eta) * &half;
            let params: Vec<(usize, Surd)> = members
                .iter()
                .map(|&m| {
                    let (mx, my) = points[m];
                    let t = if dx != 0 { (mx - bx) / dx } else { (my - by) / dy };
                    (m, Surd::from_int(t))
                })
                .collect();
            for (ai, (m1, t1)) in params.iter().enumerate() {
                for (m2, t2) in params.iter().skip(ai + 1) {
                    let s1 = t1 - &t_max;
                    let s2 = t2 - &t_max;
                    if (&s1 * &s2).signum() < 0 {
                        continue; // opposite sides of the maximum
                    }
                    let cmp = (&s1.abs() - &s2.abs()).signum();
                    // The point farther from the maximum is the smaller
                    // one; exact distance ties are incomparable.
                    match cmp {
                        c if c > 0 => below[*m2].push(*m1),
                        c if c < 0 => below[*m1].push(*m2),
                        _ => {}
                    }
                }
            }
        }
    }
}

/// Certified minimal points of the chosen order.
pub fn minimal_points(problem: &Cell, w: &Window, kind: OrderKind) -> Vec<(i64, i64)> {
    OrderRelation::build(problem, w, kind).certified_minimal(problem, w)
}
