//! Exact rational linear programming with verified certificates.
//!
//! Two-phase primal simplex under Bland's rule (smallest-index entering
//! column, smallest basic index on ratio ties), which excludes cycling, so
//! the solver terminates on every input. All pivoting is exact; rationals
//! renormalize to lowest terms on every operation.
//!
//! Every outcome carries a certificate that is re-verified against the
//! original problem data by direct substitution before being returned:
//! optimality (primal feasibility, dual feasibility, equal objectives),
//! infeasibility (a Farkas vector), or unboundedness (a feasible point plus
//! an improving ray).

use crate::rat::Rat;
use num::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarBound {
    Nonneg,
    Free,
}

/// `maximize objective . x` subject to `rows[i] . x  rels[i]  rhs[i]` and the
/// per-variable sign bounds.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<Rat>,
    pub rows: Vec<Vec<Rat>>,
    pub rels: Vec<Rel>,
    pub rhs: Vec<Rat>,
    pub bounds: Vec<VarBound>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// Attained maximum with an optimal point and dual multipliers; the
    /// duals satisfy the sign conventions of the row relations and close the
    /// duality gap exactly.
    Optimal {
        value: Rat,
        primal: Vec<Rat>,
        dual: Vec<Rat>,
    },
    /// No feasible point; `farkas` aggregates the rows into a contradiction.
    Infeasible { farkas: Vec<Rat> },
    /// Feasible and improvable without limit along `point + t * ray`.
    Unbounded { point: Vec<Rat>, ray: Vec<Rat> },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("malformed program: {0}")]
    Shape(String),
    #[error("internal certificate verification failed: {0}")]
    Certificate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColKind {
    /// Structural column carrying `+x_j` (or the positive half of a split
    /// free variable).
    Plus(usize),
    /// Negative half of a split free variable.
    Minus(usize),
    Slack(usize),
    Surplus(usize),
    Artificial(usize),
}

struct Tableau {
    t: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    basis: Vec<usize>,
    obj: Vec<Rat>,
    col_kind: Vec<ColKind>,
    /// Initial identity column of each standardized row (slack or
    /// artificial), used to read off dual multipliers.
    unit_col: Vec<usize>,
    /// Original row index of each standardized row.
    orig_row: Vec<usize>,
    /// Whether the standardized row is the negation of the original.
    flip: Vec<bool>,
}

impl Tableau {
    fn m(&self) -> usize {
        self.t.len()
    }

    fn ncols(&self) -> usize {
        self.col_kind.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let pv = self.t[r][c].clone();
        debug_assert!(!pv.is_zero());
        for x in self.t[r].iter_mut() {
            *x = &*x / &pv;
        }
        self.b[r] = &self.b[r] / &pv;
        for i in 0..self.m() {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            for j in 0..self.ncols() {
                let d = &f * &self.t[r][j];
                self.t[i][j] = &self.t[i][j] - d;
            }
            self.b[i] = &self.b[i] - &f * &self.b[r];
        }
        let f = self.obj[c].clone();
        if !f.is_zero() {
            for j in 0..self.ncols() {
                let d = &f * &self.t[r][j];
                self.obj[j] = &self.obj[j] - d;
            }
        }
        self.basis[r] = c;
    }

    /// Rebuilds the reduced-cost row for the given column costs.
    fn recompute_obj(&mut self, costs: &[Rat]) {
        let mut obj = costs.to_vec();
        for r in 0..self.m() {
            let cb = &costs[self.basis[r]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.ncols() {
                let d = cb * &self.t[r][j];
                obj[j] = &obj[j] - d;
            }
        }
        self.obj = obj;
    }

    fn objective_value(&self, costs: &[Rat]) -> Rat {
        let mut v = Rat::zero();
        for r in 0..self.m() {
            v = v + &costs[self.basis[r]] * &self.b[r];
        }
        v
    }

    /// Blandian pivoting until optimality (`None`) or an entering column
    /// admitting no blocking row (`Some(column)`).
    fn run(&mut self, enter_allowed: &dyn Fn(&ColKind) -> bool) -> Option<usize> {
        loop {
            let mut entering = None;
            for j in 0..self.ncols() {
                if self.obj[j].is_positive() && enter_allowed(&self.col_kind[j]) {
                    entering = Some(j);
                    break;
                }
            }
            let c = entering?;
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.m() {
                if !self.t[r][c].is_positive() {
                    continue;
                }
                let ratio = &self.b[r] / &self.t[r][c];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Some(c),
            }
        }
    }

    /// Point in the original variable space for the current basic solution.
    fn primal(&self, nvars: usize) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); nvars];
        for r in 0..self.m() {
            if self.b[r].is_zero() {
                continue;
            }
            match self.col_kind[self.basis[r]] {
                ColKind::Plus(j) => x[j] = &x[j] + &self.b[r],
                ColKind::Minus(j) => x[j] = &x[j] - &self.b[r],
                _ => {}
            }
        }
        x
    }

    /// Dual multipliers in the original row space, read off the reduced
    /// costs of the per-row identity columns. Rows dropped as redundant keep
    /// multiplier zero.
    fn dual(&self, costs: &[Rat], n_orig_rows: usize) -> Vec<Rat> {
        let mut y = vec![Rat::zero(); n_orig_rows];
        for i in 0..self.m() {
            let u = self.unit_col[i];
            let yi = &costs[u] - &self.obj[u];
            y[self.orig_row[i]] = if self.flip[i] { -yi } else { yi };
        }
        y
    }
}

/// Solves the program and returns a verified outcome.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    check_shape(lp)?;
    let nvars = lp.objective.len();
    let m_orig = lp.rows.len();

    // Standardize: split free variables, force nonnegative right-hand sides,
    // then append slack, surplus, and artificial columns.
    let mut col_kind = Vec::new();
    for (j, bd) in lp.bounds.iter().enumerate() {
        col_kind.push(ColKind::Plus(j));
        if *bd == VarBound::Free {
            col_kind.push(ColKind::Minus(j));
        }
    }
    let n_struct = col_kind.len();

    let mut rows = Vec::with_capacity(m_orig);
    let mut rels = Vec::with_capacity(m_orig);
    let mut b = Vec::with_capacity(m_orig);
    let mut flip = Vec::with_capacity(m_orig);
    for i in 0..m_orig {
        let neg = lp.rhs[i].is_negative();
        let mut row: Vec<Rat> = col_kind
            .iter()
            .map(|ck| match ck {
                ColKind::Plus(j) => lp.rows[i][*j].clone(),
                ColKind::Minus(j) => -&lp.rows[i][*j],
                _ => unreachable!(),
            })
            .collect();
        let mut rel = lp.rels[i];
        let mut rhs = lp.rhs[i].clone();
        if neg {
            for x in row.iter_mut() {
                *x = -&*x;
            }
            rhs = -rhs;
            rel = match rel {
                Rel::Le => Rel::Ge,
                Rel::Ge => Rel::Le,
                Rel::Eq => Rel::Eq,
            };
        }
        rows.push(row);
        rels.push(rel);
        b.push(rhs);
        flip.push(neg);
    }

    let mut basis = Vec::with_capacity(m_orig);
    let mut unit_col = Vec::with_capacity(m_orig);
    for (i, rel) in rels.iter().enumerate() {
        match rel {
            Rel::Le => {
                let c = col_kind.len();
                col_kind.push(ColKind::Slack(i));
                basis.push(c);
                unit_col.push(c);
            }
            Rel::Ge => {
                col_kind.push(ColKind::Surplus(i));
                let c = col_kind.len();
                col_kind.push(ColKind::Artificial(i));
                basis.push(c);
                unit_col.push(c);
            }
            Rel::Eq => {
                let c = col_kind.len();
                col_kind.push(ColKind::Artificial(i));
                basis.push(c);
                unit_col.push(c);
            }
        }
    }
    let ncols = col_kind.len();
    let mut t = vec![vec![Rat::zero(); ncols]; m_orig];
    for i in 0..m_orig {
        t[i][..n_struct].clone_from_slice(&rows[i]);
        match rels[i] {
            Rel::Le => t[i][unit_col[i]] = Rat::from_integer(1.into()),
            Rel::Ge => {
                t[i][unit_col[i] - 1] = Rat::from_integer((-1).into());
                t[i][unit_col[i]] = Rat::from_integer(1.into());
            }
            Rel::Eq => t[i][unit_col[i]] = Rat::from_integer(1.into()),
        }
    }

    let mut tab = Tableau {
        t,
        b,
        basis,
        obj: vec![],
        col_kind: col_kind.clone(),
        unit_col,
        orig_row: (0..m_orig).collect(),
        flip,
    };

    // Phase 1: maximize minus the sum of artificials.
    let phase1_costs: Vec<Rat> = tab
        .col_kind
        .iter()
        .map(|ck| match ck {
            ColKind::Artificial(_) => Rat::from_integer((-1).into()),
            _ => Rat::zero(),
        })
        .collect();
    tab.recompute_obj(&phase1_costs);
    let esc = tab.run(&|_| true);
    debug_assert!(esc.is_none(), "phase 1 objective is bounded above by zero");
    if tab.objective_value(&phase1_costs).is_negative() {
        let farkas = tab.dual(&phase1_costs, m_orig);
        verify_infeasible(lp, &farkas).map_err(LpError::Certificate)?;
        return Ok(LpOutcome::Infeasible { farkas });
    }

    // Drive leftover artificials out of the degenerate optimal basis; rows
    // that cannot be repaired are dependent and get dropped.
    let mut drop_rows = Vec::new();
    for r in 0..tab.m() {
        if !matches!(tab.col_kind[tab.basis[r]], ColKind::Artificial(_)) {
            continue;
        }
        debug_assert!(tab.b[r].is_zero(), "basic artificial at phase-1 optimum");
        let mut pivoted = false;
        for j in 0..tab.ncols() {
            if matches!(tab.col_kind[j], ColKind::Artificial(_)) {
                continue;
            }
            if !tab.t[r][j].is_zero() {
                tab.pivot(r, j);
                pivoted = true;
                break;
            }
        }
        if !pivoted {
            drop_rows.push(r);
        }
    }
    if !drop_rows.is_empty() {
        let keep = |i: usize| !drop_rows.contains(&i);
        tab.t = take_indexed(std::mem::take(&mut tab.t), &keep);
        tab.b = take_indexed(std::mem::take(&mut tab.b), &keep);
        tab.basis = take_indexed(std::mem::take(&mut tab.basis), &keep);
        tab.unit_col = take_indexed(std::mem::take(&mut tab.unit_col), &keep);
        tab.orig_row = take_indexed(std::mem::take(&mut tab.orig_row), &keep);
        tab.flip = take_indexed(std::mem::take(&mut tab.flip), &keep);
    }

    // Phase 2 over the true objective; artificials may never re-enter.
    let phase2_costs: Vec<Rat> = tab
        .col_kind
        .iter()
        .map(|ck| match ck {
            ColKind::Plus(j) => lp.objective[*j].clone(),
            ColKind::Minus(j) => -&lp.objective[*j],
            _ => Rat::zero(),
        })
        .collect();
    tab.recompute_obj(&phase2_costs);
    let escape = tab.run(&|ck| !matches!(ck, ColKind::Artificial(_)));

    match escape {
        None => {
            let primal = tab.primal(nvars);
            let dual = tab.dual(&phase2_costs, m_orig);
            let value = dot(&lp.objective, &primal);
            verify_optimal(lp, &value, &primal, &dual).map_err(LpError::Certificate)?;
            Ok(LpOutcome::Optimal { value, primal, dual })
        }
        Some(c) => {
            let point = tab.primal(nvars);
            let mut ray = vec![Rat::zero(); nvars];
            let add = |ray: &mut Vec<Rat>, ck: &ColKind, amt: &Rat| match ck {
                ColKind::Plus(j) => ray[*j] = &ray[*j] + amt,
                ColKind::Minus(j) => ray[*j] = &ray[*j] - amt,
                _ => {}
            };
            let entering_kind = tab.col_kind[c];
            add(&mut ray, &entering_kind, &Rat::from_integer(1.into()));
            for r in 0..tab.m() {
                if tab.t[r][c].is_zero() {
                    continue;
                }
                let amt = -&tab.t[r][c];
                let basic_kind = tab.col_kind[tab.basis[r]];
                add(&mut ray, &basic_kind, &amt);
            }
            verify_unbounded(lp, &point, &ray).map_err(LpError::Certificate)?;
            Ok(LpOutcome::Unbounded { point, ray })
        }
    }
}

fn take_indexed<T>(v: Vec<T>, keep: &dyn Fn(usize) -> bool) -> Vec<T> {
    v.into_iter()
        .enumerate()
        .filter(|(i, _)| keep(*i))
        .map(|(_, x)| x)
        .collect()
}

fn check_shape(lp: &LinearProgram) -> Result<(), LpError> {
    let n = lp.objective.len();
    if lp.bounds.len() != n {
        return Err(LpError::Shape(format!(
            "{} objective terms but {} variable bounds",
            n,
            lp.bounds.len()
        )));
    }
    let m = lp.rows.len();
    if lp.rels.len() != m || lp.rhs.len() != m {
        return Err(LpError::Shape(format!(
            "{} rows but {} relations and {} right-hand sides",
            m,
            lp.rels.len(),
            lp.rhs.len()
        )));
    }
    for (i, row) in lp.rows.iter().enumerate() {
        if row.len() != n {
            return Err(LpError::Shape(format!(
                "row {} has {} coefficients, expected {}",
                i,
                row.len(),
                n
            )));
        }
    }
    Ok(())
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s = s + x * y;
        }
    }
    s
}

/// Primal feasibility of `x` for the program, by exact substitution.
pub fn is_feasible(lp: &LinearProgram, x: &[Rat]) -> bool {
    if x.len() != lp.objective.len() {
        return false;
    }
    for (j, bd) in lp.bounds.iter().enumerate() {
        if *bd == VarBound::Nonneg && x[j].is_negative() {
            return false;
        }
    }
    for i in 0..lp.rows.len() {
        let lhs = dot(&lp.rows[i], x);
        let ok = match lp.rels[i] {
            Rel::Le => lhs <= lp.rhs[i],
            Rel::Eq => lhs == lp.rhs[i],
            Rel::Ge => lhs >= lp.rhs[i],
        };
        if !ok {
            return false;
        }
    }
    true
}

fn verify_optimal(lp: &LinearProgram, value: &Rat, x: &[Rat], y: &[Rat]) -> Result<(), String> {
    if !is_feasible(lp, x) {
        return Err("claimed optimum is not primal feasible".into());
    }
    if &dot(&lp.objective, x) != value {
        return Err("claimed optimum value disagrees with the point".into());
    }
    verify_dual_feasible(lp, y)?;
    // Zero duality gap: y . b == c . x.
    if dot(y, &lp.rhs) != *value {
        return Err("duality gap is not closed".into());
    }
    Ok(())
}

fn verify_dual_feasible(lp: &LinearProgram, y: &[Rat]) -> Result<(), String> {
    if y.len() != lp.rows.len() {
        return Err("dual vector has the wrong length".into());
    }
    for (i, rel) in lp.rels.iter().enumerate() {
        match rel {
            Rel::Le if y[i].is_negative() => {
                return Err(format!("dual multiplier {i} of a <= row is negative"))
            }
            Rel::Ge if y[i].is_positive() => {
                return Err(format!("dual multiplier {i} of a >= row is positive"))
            }
            _ => {}
        }
    }
    for j in 0..lp.objective.len() {
        let mut s = Rat::zero();
        for i in 0..lp.rows.len() {
            if !y[i].is_zero() {
                s = s + &y[i] * &lp.rows[i][j];
            }
        }
        match lp.bounds[j] {
            VarBound::Nonneg => {
                if s < lp.objective[j] {
                    return Err(format!("dual constraint {j} violated"));
                }
            }
            VarBound::Free => {
                if s != lp.objective[j] {
                    return Err(format!("dual constraint {j} not tight for a free variable"));
                }
            }
        }
    }
    Ok(())
}

fn verify_infeasible(lp: &LinearProgram, y: &[Rat]) -> Result<(), String> {
    if y.len() != lp.rows.len() {
        return Err("farkas vector has the wrong length".into());
    }
    for (i, rel) in lp.rels.iter().enumerate() {
        match rel {
            Rel::Le if y[i].is_negative() => {
                return Err(format!("farkas multiplier {i} of a <= row is negative"))
            }
            Rel::Ge if y[i].is_positive() => {
                return Err(format!("farkas multiplier {i} of a >= row is positive"))
            }
            _ => {}
        }
    }
    for j in 0..lp.objective.len() {
        let mut s = Rat::zero();
        for i in 0..lp.rows.len() {
            if !y[i].is_zero() {
                s = s + &y[i] * &lp.rows[i][j];
            }
        }
        match lp.bounds[j] {
            VarBound::Nonneg => {
                if s.is_negative() {
                    return Err(format!("farkas aggregation negative on variable {j}"));
                }
            }
            VarBound::Free => {
                if !s.is_zero() {
                    return Err(format!("farkas aggregation nonzero on free variable {j}"));
                }
            }
        }
    }
    if !dot(y, &lp.rhs).is_negative() {
        return Err("farkas aggregation does not contradict the right-hand sides".into());
    }
    Ok(())
}

fn verify_unbounded(lp: &LinearProgram, point: &[Rat], ray: &[Rat]) -> Result<(), String> {
    if !is_feasible(lp, point) {
        return Err("unboundedness witness point is infeasible".into());
    }
    if ray.len() != lp.objective.len() {
        return Err("ray has the wrong length".into());
    }
    if !dot(&lp.objective, ray).is_positive() {
        return Err("ray does not improve the objective".into());
    }
    for (j, bd) in lp.bounds.iter().enumerate() {
        if *bd == VarBound::Nonneg && ray[j].is_negative() {
            return Err(format!("ray leaves the nonnegative orthant on variable {j}"));
        }
    }
    for i in 0..lp.rows.len() {
        let v = dot(&lp.rows[i], ray);
        let ok = match lp.rels[i] {
            Rel::Le => !v.is_positive(),
            Rel::Eq => v.is_zero(),
            Rel::Ge => !v.is_negative(),
        };
        if !ok {
            return Err(format!("ray violates recession direction of row {i}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use num::{One, Zero};

    fn nn(n: usize) -> Vec<VarBound> {
        vec![VarBound::Nonneg; n]
    }

    fn r(vals: &[i64]) -> Vec<Rat> {
        vals.iter().map(|&v| rat_int(v)).collect()
    }

    #[test]
    fn textbook_optimum() {
        // max x + y, x + 2y <= 4, 3x + y <= 6: optimum 14/5 at (8/5, 6/5).
        let lp = LinearProgram {
            objective: r(&[1, 1]),
            rows: vec![r(&[1, 2]), r(&[3, 1])],
            rels: vec![Rel::Le, Rel::Le],
            rhs: r(&[4, 6]),
            bounds: nn(2),
        };
        match solve(&lp).unwrap() {
            LpOutcome::Optimal { value, primal, .. } => {
                assert_eq!(value, rat(14, 5));
                assert_eq!(primal, vec![rat(8, 5), rat(6, 5)]);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn detects_infeasibility_with_farkas() {
        // x <= -1 conflicts with x >= 0.
        let lp = LinearProgram {
            objective: r(&[0]),
            rows: vec![r(&[1])],
            rels: vec![Rel::Le],
            rhs: r(&[-1]),
            bounds: nn(1),
        };
        match solve(&lp).unwrap() {
            LpOutcome::Infeasible { farkas } => {
                verify_infeasible(&lp, &farkas).unwrap();
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn detects_unboundedness_with_ray() {
        let lp = LinearProgram {
            objective: r(&[1]),
            rows: vec![r(&[1])],
            rels: vec![Rel::Ge],
            rhs: r(&[1]),
            bounds: nn(1),
        };
        match solve(&lp).unwrap() {
            LpOutcome::Unbounded { point, ray } => {
                verify_unbounded(&lp, &point, &ray).unwrap();
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn no_constraints_zero_objective_cases() {
        let lp = LinearProgram {
            objective: r(&[-1, 0]),
            rows: vec![],
            rels: vec![],
            rhs: vec![],
            bounds: nn(2),
        };
        match solve(&lp).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat_int(0)),
            other => panic!("expected optimum, got {other:?}"),
        }
        let lp = LinearProgram {
            objective: r(&[1]),
            rows: vec![],
            rels: vec![],
            rhs: vec![],
            bounds: nn(1),
        };
        assert!(matches!(solve(&lp).unwrap(), LpOutcome::Unbounded { .. }));
    }

    #[test]
    fn equality_with_free_variables() {
        // max y - x with x - y = 3 and both variables free: the objective is
        // constantly -3 on the feasible line.
        let lp = LinearProgram {
            objective: r(&[-1, 1]),
            rows: vec![r(&[1, -1])],
            rels: vec![Rel::Eq],
            rhs: r(&[3]),
            bounds: vec![VarBound::Free, VarBound::Free],
        };
        match solve(&lp).unwrap() {
            LpOutcome::Optimal { value, primal, dual } => {
                assert_eq!(value, rat_int(-3));
                assert_eq!(&primal[0] - &primal[1], rat_int(3));
                assert_eq!(dual, vec![rat_int(-1)]);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn free_variable_pushed_negative() {
        // max -x with x >= -5, x free: optimum 5 at x = -5.
        let lp = LinearProgram {
            objective: r(&[-1]),
            rows: vec![r(&[1])],
            rels: vec![Rel::Ge],
            rhs: r(&[-5]),
            bounds: vec![VarBound::Free],
        };
        match solve(&lp).unwrap() {
            LpOutcome::Optimal { value, primal, .. } => {
                assert_eq!(value, rat_int(5));
                assert_eq!(primal, vec![rat_int(-5)]);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn redundant_and_contradictory_zero_rows() {
        // An all-zero equality row with zero rhs is dropped as dependent.
        let lp = LinearProgram {
            objective: r(&[1]),
            rows: vec![r(&[0]), r(&[1])],
            rels: vec![Rel::Eq, Rel::Le],
            rhs: r(&[0, 7]),
            bounds: nn(1),
        };
        match solve(&lp).unwrap() {
            LpOutcome::Optimal { value, dual, .. } => {
                assert_eq!(value, rat_int(7));
                assert_eq!(dual.len(), 2);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
        // An all-zero row demanding 0 = 1 is infeasible.
        let lp = LinearProgram {
            objective: r(&[1]),
            rows: vec![r(&[0])],
            rels: vec![Rel::Eq],
            rhs: r(&[1]),
            bounds: nn(1),
        };
        assert!(matches!(solve(&lp).unwrap(), LpOutcome::Infeasible { .. }));
    }

    #[test]
    fn duplicated_constraints_are_harmless() {
        let lp = LinearProgram {
            objective: r(&[1, 1]),
            rows: vec![r(&[1, 1]), r(&[1, 1]), r(&[1, 1])],
            rels: vec![Rel::Le, Rel::Le, Rel::Eq],
            rhs: r(&[2, 2, 2]),
            bounds: nn(2),
        };
        match solve(&lp).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat_int(2)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn normalized_profile_maximization() {
        // max g with g + f = 1, g - f <= 0: optimum g = 1/2.
        let lp = LinearProgram {
            objective: r(&[1, 0]),
            rows: vec![r(&[1, 1]), r(&[1, -1])],
            rels: vec![Rel::Eq, Rel::Le],
            rhs: r(&[1, 0]),
            bounds: nn(2),
        };
        match solve(&lp).unwrap() {
            LpOutcome::Optimal { value, primal, .. } => {
                assert_eq!(value, rat(1, 2));
                assert_eq!(primal, vec![rat(1, 2), rat(1, 2)]);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
        // max g with g + f = 1, g - f/2 <= 0: optimum g = 1/3 at f = 2/3.
        let lp = LinearProgram {
            objective: r(&[1, 0]),
            rows: vec![r(&[1, 1]), vec![rat_int(1), rat(-1, 2)]],
            rels: vec![Rel::Eq, Rel::Le],
            rhs: r(&[1, 0]),
            bounds: nn(2),
        };
        match solve(&lp).unwrap() {
            LpOutcome::Optimal { value, primal, .. } => {
                assert_eq!(value, rat(1, 3));
                assert_eq!(primal, vec![rat(1, 3), rat(2, 3)]);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_shapes() {
        let lp = LinearProgram {
            objective: r(&[1, 2]),
            rows: vec![r(&[1])],
            rels: vec![Rel::Le],
            rhs: r(&[1]),
            bounds: nn(2),
        };
        assert!(matches!(solve(&lp), Err(LpError::Shape(_))));
        let lp = LinearProgram {
            objective: r(&[1]),
            rows: vec![r(&[1])],
            rels: vec![],
            rhs: r(&[1]),
            bounds: nn(1),
        };
        assert!(matches!(solve(&lp), Err(LpError::Shape(_))));
    }

    #[test]
    fn degenerate_cycling_guard() {
        // A classic degenerate instance; Bland's rule must terminate.
        let lp = LinearProgram {
            objective: vec![rat(3, 4), rat_int(-150), rat(1, 50), rat_int(-6)],
            rows: vec![
                vec![rat(1, 4), rat_int(-60), rat(-1, 25), rat_int(9)],
                vec![rat(1, 2), rat_int(-90), rat(-1, 50), rat_int(3)],
                vec![rat_int(0), rat_int(0), rat_int(1), rat_int(0)],
            ],
            rels: vec![Rel::Le, Rel::Le, Rel::Le],
            rhs: r(&[0, 0, 1]),
            bounds: nn(4),
        };
        match solve(&lp).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(1, 20)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn optimum_matches_vertex_enumeration_on_random_lps() {
        // Independent oracle: with all variables nonnegative the feasible
        // region is pointed, so a bounded optimum sits at a vertex, and
        // every vertex solves some n-subset of the active constraints
        // (rows as equalities plus axes). Enumerating all subsets and
        // taking the best feasible solution reproduces the optimum; extra
        // feasible non-vertex points from degenerate subsets can only sit
        // below it.
        use itertools::Itertools;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260819);
        let mut optimal = 0usize;
        let mut infeasible = 0usize;
        let mut unbounded = 0usize;
        for _ in 0..200 {
            let n = rng.random_range(2..=3);
            let m = rng.random_range(2..=4);
            let objective: Vec<Rat> =
                (0..n).map(|_| rat_int(rng.random_range(-4..=4))).collect();
            let rows: Vec<Vec<Rat>> = (0..m)
                .map(|_| (0..n).map(|_| rat_int(rng.random_range(-3..=3))).collect())
                .collect();
            let rels: Vec<Rel> = (0..m)
                .map(|_| match rng.random_range(0..6) {
                    0 => Rel::Ge,
                    1 => Rel::Eq,
                    _ => Rel::Le,
                })
                .collect();
            let rhs: Vec<Rat> = (0..m).map(|_| rat_int(rng.random_range(-2..=5))).collect();
            let lp = LinearProgram {
                objective: objective.clone(),
                rows: rows.clone(),
                rels,
                rhs,
                bounds: nn(n),
            };

            // Candidate active sets: n picks from the m rows and n axes.
            let total = m + n;
            let mut best: Option<Rat> = None;
            let mut any_feasible = false;
            for subset in (0..total).combinations(n) {
                let mut a: Vec<Vec<Rat>> = Vec::with_capacity(n);
                let mut b: Vec<Rat> = Vec::with_capacity(n);
                for &pick in &subset {
                    if pick < m {
                        a.push(lp.rows[pick].clone());
                        b.push(lp.rhs[pick].clone());
                    } else {
                        let mut axis = vec![Rat::zero(); n];
                        axis[pick - m] = Rat::one();
                        a.push(axis);
                        b.push(Rat::zero());
                    }
                }
                if let Some(x) = crate::psd::solve_linear_system(&a, &b) {
                    if is_feasible(&lp, &x) {
                        any_feasible = true;
                        let value: Rat =
                            lp.objective.iter().zip(&x).map(|(c, xi)| c * xi).sum();
                        if best.as_ref().is_none_or(|bv| value > *bv) {
                            best = Some(value);
                        }
                    }
                }
            }

            match solve(&lp).unwrap() {
                LpOutcome::Optimal { value, primal, .. } => {
                    optimal += 1;
                    assert!(is_feasible(&lp, &primal));
                    let oracle = best.expect("feasible LP must have a feasible vertex");
                    assert_eq!(value, oracle, "simplex and vertex oracle disagree");
                }
                LpOutcome::Infeasible { .. } => {
                    // The certificate is verified inside solve; the oracle
                    // must agree that nothing was feasible.
                    infeasible += 1;
                    assert!(!any_feasible, "oracle found a point in an infeasible LP");
                }
                LpOutcome::Unbounded { .. } => {
                    // Ray and point are verified inside solve.
                    unbounded += 1;
                }
            }
        }
        // The mix should exercise all three outcomes.
        assert!(optimal >= 40, "only {optimal} optimal instances");
        assert!(infeasible >= 10, "only {infeasible} infeasible instances");
        assert!(unbounded >= 10, "only {unbounded} unbounded instances");
    }
}
