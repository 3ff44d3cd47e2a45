//! Exact positive semidefiniteness, rank, and PSD completion of partially
//! specified symmetric matrices.
//!
//! `SymMatrix` is a fully specified rational symmetric matrix; `is_psd` and
//! `psd_rank` decide semidefiniteness and rank by exact symmetric elimination.
//! `PartialSymMatrix` leaves some entries unspecified, and `complete_psd`
//! decides whether the unspecified entries can be filled to reach a PSD
//! matrix. When the specification graph is chordal the decision is exact;
//! otherwise a floating-point alternating projection proposes a witness that
//! is only accepted after an exact re-check, and `Unknown` is an honest
//! outcome.

use crate::poly::Poly;
use crate::rat::Rat;
use num::{One, Signed, Zero};
use std::fmt;

/// Input validation errors for matrix construction and rank queries.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PsdError {
    #[error("matrix rows must form a square array")]
    NotSquare,
    #[error("matrix must be symmetric: entries ({0},{1}) and ({1},{0}) differ")]
    NotSymmetric(usize, usize),
    #[error("psd_rank requires a positive semidefinite input")]
    NotPsd,
}

/// A fully specified symmetric matrix with rational entries.
///
/// Symmetry is validated on construction and preserved by every operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix {
    entries: Vec<Vec<Rat>>,
}

impl SymMatrix {
    /// Builds a matrix from rows, checking squareness and exact symmetry.
    pub fn new(entries: Vec<Vec<Rat>>) -> Result<Self, PsdError> {
        let m = entries.len();
        if entries.iter().any(|row| row.len() != m) {
            return Err(PsdError::NotSquare);
        }
        for i in 0..m {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(PsdError::NotSymmetric(j, i));
                }
            }
        }
        Ok(SymMatrix { entries })
    }

    /// Builds a matrix by evaluating `f(i, j)` for `j <= i` and mirroring.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = vec![vec![Rat::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..=i {
                let v = f(i, j);
                entries[i][j] = v.clone();
                entries[j][i] = v;
            }
        }
        SymMatrix { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    /// The principal submatrix on the given (strictly increasing) indices.
    pub fn principal_submatrix(&self, indices: &[usize]) -> SymMatrix {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.iter().all(|&i| i < self.dim()));
        let entries = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        SymMatrix { entries }
    }

    /// Exact positive-semidefiniteness test by symmetric elimination.
    ///
    /// Pivots on positive diagonal entries in index order. A negative
    /// diagonal entry in the reduced matrix refutes immediately; a zero
    /// diagonal entry requires its whole reduced row to vanish, since
    /// otherwise some 2x2 principal block of the reduced matrix has
    /// negative determinant.
    pub fn is_psd(&self) -> bool {
        self.ldlt_pivots().is_some()
    }

    /// Exact rank of a PSD matrix: the number of positive elimination pivots.
    ///
    /// Errors on non-PSD input instead of returning a misleading count.
    pub fn psd_rank(&self) -> Result<usize, PsdError> {
        self.ldlt_pivots().map(|p| p.len()).ok_or(PsdError::NotPsd)
    }

    /// Runs symmetric elimination; returns the positive pivots, or `None`
    /// when the matrix is not PSD. Rows whose pivot is zero must already be
    /// zero, so the pivot count is the rank.
    fn ldlt_pivots(&self) -> Option<Vec<Rat>> {
        let m = self.dim();
        let mut a = self.entries.clone();
        let mut pivots = Vec::new();
        for k in 0..m {
            let piv = a[k][k].clone();
            if piv.is_negative() {
                return None;
            }
            if piv.is_zero() {
                if (k + 1..m).any(|j| !a[k][j].is_zero()) {
                    return None;
                }
                continue;
            }
            for i in k + 1..m {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &piv;
                for j in k + 1..m {
                    let delta = &factor * &a[k][j];
                    a[i][j] = &a[i][j] - &delta;
                }
            }
            pivots.push(piv);
        }
        Some(pivots)
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(crate::rat::rat_to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A symmetric matrix with some entries unspecified (`None`).
///
/// The specified/unspecified mask is itself symmetric, and specified entries
/// agree across the diagonal exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSymMatrix {
    entries: Vec<Vec<Option<Rat>>>,
}

impl PartialSymMatrix {
    /// Builds a partial matrix from rows of optional entries, checking
    /// squareness and symmetry of both values and mask.
    pub fn new(entries: Vec<Vec<Option<Rat>>>) -> Result<Self, PsdError> {
        let m = entries.len();
        if entries.iter().any(|row| row.len() != m) {
            return Err(PsdError::NotSquare);
        }
        for i in 0..m {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(PsdError::NotSymmetric(j, i));
                }
            }
        }
        Ok(PartialSymMatrix { entries })
    }

    /// Wraps a fully specified matrix.
    pub fn from_full(m: &SymMatrix) -> Self {
        let entries = m
            .rows()
            .iter()
            .map(|row| row.iter().cloned().map(Some).collect())
            .collect();
        PartialSymMatrix { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Rat> {
        self.entries[i][j].as_ref()
    }

    pub fn is_specified(&self, i: usize, j: usize) -> bool {
        self.entries[i][j].is_some()
    }

    pub fn rows(&self) -> &[Vec<Option<Rat>>] {
        &self.entries
    }

    /// Extracts the full matrix when every entry is specified.
    pub fn fully_specified(&self) -> Option<SymMatrix> {
        let mut rows = Vec::with_capacity(self.dim());
        for row in &self.entries {
            let r: Option<Vec<Rat>> = row.iter().cloned().collect();
            rows.push(r?);
        }
        Some(SymMatrix { entries: rows })
    }

    /// Applies a polynomial entrywise to the specified entries; the image of
    /// an unspecified entry stays unspecified, so the mask is unchanged.
    pub fn apply_entrywise(&self, f: &Poly) -> PartialSymMatrix {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.as_ref().map(|x| f.eval(x))).collect())
            .collect();
        PartialSymMatrix { entries }
    }
}

/// Which decision procedure `complete_psd` ran: the exact clique-tree fill
/// for chordal specification graphs, or the floating-point alternating
/// projection fallback (whose positive answers are still verified exactly).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletionMethod {
    Chordal,
    Projection,
}

/// A fully specified principal submatrix of the input that fails `is_psd`,
/// refuting every completion at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasibilityCertificate {
    /// Strictly increasing row/column indices into the input matrix.
    pub indices: Vec<usize>,
    /// The principal submatrix on those indices.
    pub block: SymMatrix,
}

/// Outcome of a completion attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompletionStatus {
    /// A PSD completion exists; the witness agrees with every specified
    /// entry exactly and passes `is_psd`.
    Completable(SymMatrix),
    /// No completion exists; the certificate refutes all of them.
    Infeasible(InfeasibilityCertificate),
    /// Neither certified. Honest outcome of the projection fallback, and of
    /// the one free-diagonal pattern noted on `complete_psd`.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionResult {
    pub status: CompletionStatus,
    pub method: CompletionMethod,
}

/// Decides PSD completability of a partial symmetric matrix.
///
/// The specification graph has a vertex per index and an edge per specified
/// off-diagonal entry. If it is chordal the answer is exact: every maximal
/// clique whose diagonal is specified is checked by `is_psd` (a failing
/// clique block is returned as an `Infeasible` certificate), and otherwise
/// the unspecified entries are filled one at a time; each fill takes the
/// midpoint of its 2x2 Schur feasibility interval, which is the rational
/// center `b^T E^+ d` and never requires a square root.
///
/// Unspecified diagonal entries are supported by a documented rule: they are
/// assigned first, in increasing index order. The feasibility interval of a
/// free diagonal entry is a half line `[a, +inf)`, where `a` is the largest
/// Schur lower bound `v^T N^+ v` over the maximal cliques containing it
/// (taking in each clique the members whose diagonal is already known), and
/// the assigned value is `a + 1`. If some `v` lies outside the range of its
/// `N`, no value works, but no fully specified principal submatrix can
/// certify that; the result is then `Unknown`.
///
/// For a non-chordal graph the same clique screening runs first (refutations
/// are still exact), then a Dykstra-style alternating projection in floating
/// point proposes a witness. The unspecified entries of the proposal are
/// rationalized, the specified entries are restored exactly, and the result
/// is accepted only if `is_psd` passes on the exact candidate; a small
/// multiple of the identity is targeted as slack so rationalization cannot
/// tip a strictly feasible proposal. Otherwise the result is `Unknown`.
///
/// Every `Completable` witness is asserted to match the specified entries
/// and pass `is_psd` before it is returned; every `Infeasible` certificate
/// is asserted to be a fully specified principal submatrix of the input that
/// fails `is_psd`.
pub fn complete_psd(p: &PartialSymMatrix) -> CompletionResult {
    let m = p.dim();
    if m == 0 {
        let witness = SymMatrix { entries: vec![] };
        return CompletionResult {
            status: CompletionStatus::Completable(witness),
            method: CompletionMethod::Chordal,
        };
    }

    let adj = specification_graph(p);
    let order = mcs_order(&adj);
    let chordal = is_perfect_elimination_order(&adj, &order);
    let method = if chordal {
        CompletionMethod::Chordal
    } else {
        CompletionMethod::Projection
    };

    // Maximal cliques of the specification graph. For a chordal graph the
    // PEO candidates suffice; otherwise Bron-Kerbosch enumerates them, with
    // a budget that, if exceeded, only weakens infeasibility screening.
    let (cliques, cliques_complete) = if chordal {
        (chordal_maximal_cliques(&adj, &order), true)
    } else {
        bron_kerbosch_cliques(&adj, 20_000)
    };

    // Exact screening: a maximal clique block restricted to known diagonals
    // is fully specified, and must be PSD in any completion.
    for clique in &cliques {
        let known: Vec<usize> = clique
            .iter()
            .copied()
            .filter(|&v| p.is_specified(v, v))
            .collect();
        if known.is_empty() {
            continue;
        }
        let block = partial_block(p, &known);
        if !block.is_psd() {
            return infeasible(p, known, method);
        }
    }

    // Work matrix: specified entries, with free diagonals assigned below.
    let mut work: Vec<Vec<Option<Rat>>> = p.rows().to_vec();

    // Free-diagonal rule: each unspecified diagonal gets the half-line
    // midpoint substitute a + 1, with a its largest per-clique Schur lower
    // bound over already-known diagonals. Increasing index order makes every
    // clique PSD once its last member is assigned.
    for i in 0..m {
        if work[i][i].is_some() {
            continue;
        }
        let mut bound = Rat::zero();
        for clique in &cliques {
            if !clique.contains(&i) {
                continue;
            }
            let s: Vec<usize> = clique
                .iter()
                .copied()
                .filter(|&v| v != i && work[v][v].is_some())
                .collect();
            if s.is_empty() {
                continue;
            }
            let n: Vec<Vec<Rat>> = s
                .iter()
                .map(|&a| s.iter().map(|&b| work[a][b].clone().unwrap()).collect())
                .collect();
            let v: Vec<Rat> = s.iter().map(|&a| work[a][i].clone().unwrap()).collect();
            let z = match solve_linear_system(&n, &v) {
                Some(z) => z,
                // v outside range(N): infeasible for every diagonal value,
                // but no fully specified block witnesses it.
                None => return CompletionResult { status: CompletionStatus::Unknown, method },
            };
            let a: Rat = v.iter().zip(&z).map(|(vi, zi)| vi * zi).sum();
            if a > bound {
                bound = a;
            }
        }
        work[i][i] = Some(bound + Rat::one());
    }

    if chordal {
        let witness = chordal_fill(&mut work, &adj, &order);
        assert_witness(p, &witness);
        CompletionResult {
            status: CompletionStatus::Completable(witness),
            method: CompletionMethod::Chordal,
        }
    } else {
        let _ = cliques_complete;
        match projection_attempt(p, &work) {
            Some(witness) => {
                assert_witness(p, &witness);
                CompletionResult {
                    status: CompletionStatus::Completable(witness),
                    method: CompletionMethod::Projection,
                }
            }
            None => CompletionResult { status: CompletionStatus::Unknown, method },
        }
    }
}

/// Adjacency of the specification graph: an edge per specified off-diagonal.
fn specification_graph(p: &PartialSymMatrix) -> Vec<Vec<bool>> {
    let m = p.dim();
    let mut adj = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..i {
            if p.is_specified(i, j) {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    adj
}

/// Maximum-cardinality search. Returns the visit order; its reverse is a
/// perfect elimination ordering exactly when the graph is chordal. Ties
/// break to the smallest index, so the order is deterministic.
fn mcs_order(adj: &[Vec<bool>]) -> Vec<usize> {
    let m = adj.len();
    let mut weight = vec![0usize; m];
    let mut visited = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let v = (0..m)
            .filter(|&v| !visited[v])
            .max_by_key(|&v| (weight[v], usize::MAX - v))
            .unwrap();
        visited[v] = true;
        order.push(v);
        for u in 0..m {
            if adj[v][u] && !visited[u] {
                weight[u] += 1;
            }
        }
    }
    order
}

/// Chordality test: with vertices eliminated in reverse MCS order, each
/// vertex's later neighbors minus the earliest of them must be neighbors of
/// that earliest one.
fn is_perfect_elimination_order(adj: &[Vec<bool>], order: &[usize]) -> bool {
    let m = adj.len();
    // pos in the elimination (reversed) order: later = visited earlier.
    let mut pos = vec![0usize; m];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = m - 1 - i;
    }
    for &v in order {
        let later: Vec<usize> = (0..m).filter(|&u| adj[v][u] && pos[u] > pos[v]).collect();
        if let Some(&parent) = later.iter().min_by_key(|&&u| pos[u]) {
            for &u in &later {
                if u != parent && !adj[parent][u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Maximal cliques of a chordal graph: each elimination-order candidate
/// {v} plus v's later neighbors, filtered down to the containment-maximal
/// ones. Cliques are sorted and the list is deterministic.
fn chordal_maximal_cliques(adj: &[Vec<bool>], order: &[usize]) -> Vec<Vec<usize>> {
    let m = adj.len();
    let mut pos = vec![0usize; m];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = m - 1 - i;
    }
    let mut candidates: Vec<Vec<usize>> = (0..m)
        .map(|v| {
            let mut c: Vec<usize> = (0..m)
                .filter(|&u| u == v || (adj[v][u] && pos[u] > pos[v]))
                .collect();
            c.sort_unstable();
            c
        })
        .collect();
    candidates.sort();
    candidates.dedup();
    let maximal: Vec<Vec<usize>> = candidates
        .iter()
        .filter(|c| {
            !candidates
                .iter()
                .any(|d| d.len() > c.len() && c.iter().all(|v| d.contains(v)))
        })
        .cloned()
        .collect();
    maximal
}

/// Bron-Kerbosch with pivoting. Returns (cliques, complete); `complete` is
/// false when the budget was exhausted and some maximal cliques may be
/// missing.
fn bron_kerbosch_cliques(adj: &[Vec<bool>], budget: usize) -> (Vec<Vec<usize>>, bool) {
    let m = adj.len();
    let mut out = Vec::new();
    let mut complete = true;
    let mut r = Vec::new();
    let p: Vec<usize> = (0..m).collect();
    let x = Vec::new();
    fn recur(
        adj: &[Vec<bool>],
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: usize,
        complete: &mut bool,
    ) {
        if out.len() >= budget {
            *complete = false;
            return;
        }
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        // Pivot: vertex of P union X with most neighbors in P.
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| (p.iter().filter(|&&v| adj[u][v]).count(), usize::MAX - u))
            .unwrap();
        let branch: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        let mut p = p;
        let mut x = x;
        for v in branch {
            let np: Vec<usize> = p.iter().copied().filter(|&u| adj[v][u]).collect();
            let nx: Vec<usize> = x.iter().copied().filter(|&u| adj[v][u]).collect();
            r.push(v);
            recur(adj, r, np, nx, out, budget, complete);
            r.pop();
            p.retain(|&u| u != v);
            x.push(v);
        }
    }
    recur(adj, &mut r, p, x, &mut out, budget, &mut complete);
    out.sort();
    (out, complete)
}

/// The fully specified block of `p` on `indices` (all diagonals and mutual
/// off-diagonals must be specified).
fn partial_block(p: &PartialSymMatrix, indices: &[usize]) -> SymMatrix {
    let entries = indices
        .iter()
        .map(|&i| {
            indices
                .iter()
                .map(|&j| p.get(i, j).expect("block entry must be specified").clone())
                .collect()
        })
        .collect();
    SymMatrix { entries }
}

fn infeasible(p: &PartialSymMatrix, mut indices: Vec<usize>, method: CompletionMethod) -> CompletionResult {
    indices.sort_unstable();
    let block = partial_block(p, &indices);
    assert!(!block.is_psd(), "infeasibility certificate must fail is_psd");
    CompletionResult {
        status: CompletionStatus::Infeasible(InfeasibilityCertificate { indices, block }),
        method,
    }
}

/// Exact chordal completion. `work` has every diagonal entry present and
/// its specified off-diagonals; fills the rest vertex by vertex along the
/// elimination order. Completing vertex v against the already complete
/// block B on the later vertices solves B_NN z = v over v's later
/// neighborhood N (a clique, so the system is consistent) and extends the
/// row by B_{.,N} z. Entry by entry this reproduces the midpoints of the
/// 2x2 Schur feasibility intervals.
fn chordal_fill(work: &mut Vec<Vec<Option<Rat>>>, adj: &[Vec<bool>], order: &[usize]) -> SymMatrix {
    let m = adj.len();
    // Elimination order: reverse of the MCS visit order.
    let elim: Vec<usize> = order.iter().rev().copied().collect();
    // Process vertices from the back of the elimination order towards the
    // front; the suffix block is complete at each step.
    for k in (0..m).rev() {
        let v = elim[k];
        let later: Vec<usize> = elim[k + 1..].to_vec();
        let nbrs: Vec<usize> = later.iter().copied().filter(|&u| adj[v][u]).collect();
        let missing: Vec<usize> = later.iter().copied().filter(|&u| !adj[v][u]).collect();
        if missing.is_empty() {
            continue;
        }
        if nbrs.is_empty() {
            for &u in &missing {
                work[v][u] = Some(Rat::zero());
                work[u][v] = Some(Rat::zero());
            }
            continue;
        }
        let n_mat: Vec<Vec<Rat>> = nbrs
            .iter()
            .map(|&a| nbrs.iter().map(|&b| work[a][b].clone().unwrap()).collect())
            .collect();
        let rhs: Vec<Rat> = nbrs.iter().map(|&a| work[a][v].clone().unwrap()).collect();
        let z = solve_linear_system(&n_mat, &rhs)
            .expect("clique screening guarantees a consistent system");
        for &u in &missing {
            let x: Rat = nbrs
                .iter()
                .zip(&z)
                .map(|(&a, zi)| work[u][a].clone().unwrap() * zi)
                .sum();
            work[v][u] = Some(x.clone());
            work[u][v] = Some(x);
        }
    }
    let entries: Vec<Vec<Rat>> = work
        .iter()
        .map(|row| row.iter().map(|e| e.clone().unwrap()).collect())
        .collect();
    SymMatrix { entries }
}

/// Dykstra-style alternating projection between the PSD cone and the affine
/// set of matrices matching the specified entries, in floating point. On
/// numeric convergence (residual below 1e-10) the unspecified entries are
/// rationalized under increasing denominator caps while the specified ones
/// are restored exactly; a candidate is accepted only if the exact `is_psd`
/// passes. Eigenvalues are clamped to a small positive slack so that a
/// strictly feasible proposal survives rationalization.
fn projection_attempt(p: &PartialSymMatrix, work: &[Vec<Option<Rat>>]) -> Option<SymMatrix> {
    let m = p.dim();
    for &slack in &[1e-6_f64, 1e-9, 0.0] {
        let mut x = nalgebra::DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                if let Some(v) = &work[i][j] {
                    x[(i, j)] = crate::rat::rat_to_f64(v);
                }
            }
        }
        let mut correction = nalgebra::DMatrix::<f64>::zeros(m, m);
        let mut converged = false;
        for _ in 0..2000 {
            let eig = nalgebra::SymmetricEigen::new(x.clone() + &correction);
            let clamped = nalgebra::DVector::from_iterator(
                m,
                eig.eigenvalues.iter().map(|&l| if l < slack { slack } else { l }),
            );
            let y = &eig.eigenvectors
                * nalgebra::DMatrix::from_diagonal(&clamped)
                * eig.eigenvectors.transpose();
            correction = x + &correction - &y;
            let mut next = y.clone();
            let mut residual = 0.0_f64;
            for i in 0..m {
                for j in 0..m {
                    if let Some(v) = &work[i][j] {
                        let target = crate::rat::rat_to_f64(v);
                        residual = residual.max((y[(i, j)] - target).abs());
                        next[(i, j)] = target;
                    }
                }
            }
            x = next;
            if residual < 1e-10 {
                converged = true;
                break;
            }
        }
        if !converged {
            continue;
        }
        'caps: for cap in [1_000u64, 1_000_000, 1_000_000_000_000] {
            let mut entries: Vec<Vec<Rat>> = vec![vec![Rat::zero(); m]; m];
            for i in 0..m {
                for j in 0..m {
                    entries[i][j] = match &work[i][j] {
                        Some(v) => v.clone(),
                        None => {
                            // Symmetrize the float proposal before
                            // rationalizing so the witness is exact.
                            let avg = (x[(i, j)] + x[(j, i)]) / 2.0;
                            match crate::rat::approx_f64(avg, cap) {
                                Some(r) => r,
                                None => continue 'caps,
                            }
                        }
                    };
                }
            }
            let candidate = SymMatrix { entries };
            if candidate.is_psd() {
                return Some(candidate);
            }
        }
    }
    None
}

/// Completable witnesses must match every specified entry exactly and pass
/// the exact PSD test. Asserted on every return.
fn assert_witness(p: &PartialSymMatrix, witness: &SymMatrix) {
    assert_eq!(witness.dim(), p.dim());
    for i in 0..p.dim() {
        for j in 0..p.dim() {
            if let Some(v) = p.get(i, j) {
                assert_eq!(witness.entry(i, j), v, "witness must match specified entries");
            }
        }
    }
    assert!(witness.is_psd(), "witness must be PSD");
}

/// Solves `a x = b` exactly by Gaussian elimination, returning any solution,
/// with free variables set to zero; `None` when the system is inconsistent.
pub fn solve_linear_system(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            debug_assert_eq!(row.len(), cols);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let piv = m[r][c].clone();
        for x in &mut m[r] {
            *x = &*x / &piv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for c2 in c..=cols {
                    let delta = &f * &m[r][c2];
                    m[i][c2] = &m[i][c2] - &delta;
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    for i in r..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &c) in pivot_col_of_row.iter().enumerate() {
        x[c] = m[row][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sym_i64(rows: &[&[i64]]) -> SymMatrix {
        SymMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn partial_i64(rows: &[&[Option<i64>]]) -> PartialSymMatrix {
        PartialSymMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|v| v.map(rat_int)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_and_ones_ranks() {
        let id = SymMatrix::from_fn(3, |i, j| if i == j { rat_int(1) } else { rat_int(0) });
        assert!(id.is_psd());
        assert_eq!(id.psd_rank().unwrap(), 3);
        let ones = SymMatrix::from_fn(3, |_, _| rat_int(1));
        assert!(ones.is_psd());
        assert_eq!(ones.psd_rank().unwrap(), 1);
    }

    #[test]
    fn indefinite_two_by_two_rejected() {
        let m = sym_i64(&[&[1, 2], &[2, 1]]);
        assert!(!m.is_psd());
        assert_eq!(m.psd_rank(), Err(PsdError::NotPsd));
    }

    #[test]
    fn zero_diagonal_rules() {
        assert!(sym_i64(&[&[0, 0], &[0, 1]]).is_psd());
        assert_eq!(sym_i64(&[&[0, 0], &[0, 1]]).psd_rank().unwrap(), 1);
        assert!(!sym_i64(&[&[0, 1], &[1, 1]]).is_psd());
        assert!(!sym_i64(&[&[-1]]).is_psd());
        assert_eq!(sym_i64(&[&[0]]).psd_rank().unwrap(), 0);
    }

    #[test]
    fn known_completions_are_psd() {
        let a = sym_i64(&[&[1, 0, -1], &[0, 2, 1], &[-1, 1, 17]]);
        assert!(a.is_psd());
        let b = sym_i64(&[&[1, 0, 1], &[0, 4, 1], &[1, 1, 289]]);
        assert!(b.is_psd());
    }

    #[test]
    fn symmetry_validated() {
        let rows = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(3), rat_int(1)],
        ];
        assert_eq!(SymMatrix::new(rows), Err(PsdError::NotSymmetric(0, 1)));
    }

    // Kneser-style Gram on the 2-subsets of a 5-set: diagonal 1, disjoint
    // pairs -1/3, overlapping pairs 1/3. Spectrum {2, 0}, so the rank is 5.
    #[test]
    fn two_subset_gram_rank_five() {
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
            .collect();
        assert_eq!(pairs.len(), 10);
        let g = SymMatrix::from_fn(10, |i, j| {
            if i == j {
                return rat_int(1);
            }
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            let disjoint = a != c && a != d && b != c && b != d;
            if disjoint {
                rat(-1, 3)
            } else {
                rat(1, 3)
            }
        });
        assert!(g.is_psd());
        assert_eq!(g.psd_rank().unwrap(), 5);
    }

    #[test]
    fn fully_specified_psd_completes_to_itself() {
        let m = sym_i64(&[&[2, 1], &[1, 2]]);
        let p = PartialSymMatrix::from_full(&m);
        let r = complete_psd(&p);
        assert_eq!(r.method, CompletionMethod::Chordal);
        assert_eq!(r.status, CompletionStatus::Completable(m));
    }

    #[test]
    fn fully_specified_indefinite_is_its_own_certificate() {
        let m = sym_i64(&[&[1, 2], &[2, 1]]);
        let p = PartialSymMatrix::from_full(&m);
        let r = complete_psd(&p);
        assert_eq!(r.method, CompletionMethod::Chordal);
        match r.status {
            CompletionStatus::Infeasible(cert) => {
                assert_eq!(cert.indices, vec![0, 1]);
                assert_eq!(cert.block, m);
            }
            other => panic!("expected Infeasible, got {other:?}"),
        }
    }

    #[test]
    fn free_diagonal_three_by_three_completes() {
        let p = partial_i64(&[
            &[Some(1), None, Some(-1)],
            &[None, Some(2), Some(1)],
            &[Some(-1), Some(1), None],
        ]);
        let r = complete_psd(&p);
        assert_eq!(r.method, CompletionMethod::Chordal);
        match r.status {
            CompletionStatus::Completable(w) => {
                assert_eq!(w.entry(0, 0), &rat_int(1));
                assert_eq!(w.entry(1, 1), &rat_int(2));
                assert_eq!(w.entry(0, 2), &rat_int(-1));
                assert_eq!(w.entry(1, 2), &rat_int(1));
                assert!(w.is_psd());
            }
            other => panic!("expected Completable, got {other:?}"),
        }
    }

    #[test]
    fn squared_image_still_completes() {
        let p = partial_i64(&[
            &[Some(1), None, Some(-1)],
            &[None, Some(2), Some(1)],
            &[Some(-1), Some(1), None],
        ]);
        let square = Poly::from_ints(&[0, 0, 1]);
        let q = p.apply_entrywise(&square);
        let expect = partial_i64(&[
            &[Some(1), None, Some(1)],
            &[None, Some(4), Some(1)],
            &[Some(1), Some(1), None],
        ]);
        assert_eq!(q, expect);
        let r = complete_psd(&q);
        assert!(matches!(r.status, CompletionStatus::Completable(_)));
    }

    #[test]
    fn entrywise_identity_and_shift() {
        let p = partial_i64(&[
            &[Some(1), None, Some(-1)],
            &[None, Some(2), Some(1)],
            &[Some(-1), Some(1), None],
        ]);
        let ident = Poly::from_ints(&[0, 1]);
        assert_eq!(p.apply_entrywise(&ident), p);
        let diag_only = partial_i64(&[
            &[Some(3), None],
            &[None, Some(5)],
        ]);
        let shift = Poly::from_ints(&[1, 1]);
        let shifted = diag_only.apply_entrywise(&shift);
        assert_eq!(shifted.get(0, 0), Some(&rat_int(4)));
        assert_eq!(shifted.get(1, 1), Some(&rat_int(6)));
        assert!(!shifted.is_specified(0, 1));
    }

    #[test]
    fn free_diagonal_range_obstruction_is_unknown() {
        // [[0, 1], [1, ?]] admits no completion, but every fully specified
        // principal block is PSD, so no certificate of the required shape
        // exists.
        let p = partial_i64(&[&[Some(0), Some(1)], &[Some(1), None]]);
        let r = complete_psd(&p);
        assert_eq!(r.status, CompletionStatus::Unknown);
    }

    #[test]
    fn tridiagonal_pattern_completes() {
        let half = Some(rat(1, 2));
        let one = Some(rat_int(1));
        let p = PartialSymMatrix::new(vec![
            vec![one.clone(), half.clone(), None, None, None],
            vec![half.clone(), one.clone(), half.clone(), None, None],
            vec![None, half.clone(), one.clone(), half.clone(), None],
            vec![None, None, half.clone(), one.clone(), half.clone()],
            vec![None, None, None, half.clone(), one.clone()],
        ])
        .unwrap();
        let r = complete_psd(&p);
        assert_eq!(r.method, CompletionMethod::Chordal);
        assert!(matches!(r.status, CompletionStatus::Completable(_)));
    }

    #[test]
    fn four_cycle_goes_through_projection() {
        // Specified 4-cycle 0-1-2-3-0 with both chords missing is the
        // smallest non-chordal pattern.
        let h = Some(rat(1, 2));
        let one = Some(rat_int(1));
        let p = PartialSymMatrix::new(vec![
            vec![one.clone(), h.clone(), None, h.clone()],
            vec![h.clone(), one.clone(), h.clone(), None],
            vec![None, h.clone(), one.clone(), h.clone()],
            vec![h.clone(), None, h.clone(), one.clone()],
        ])
        .unwrap();
        let r = complete_psd(&p);
        assert_eq!(r.method, CompletionMethod::Projection);
        match r.status {
            CompletionStatus::Completable(w) => assert!(w.is_psd()),
            CompletionStatus::Unknown => panic!("strictly feasible cycle should certify"),
            CompletionStatus::Infeasible(_) => panic!("cycle pattern is completable"),
        }
    }

    #[test]
    fn four_cycle_with_bad_edge_is_infeasible() {
        let h = Some(rat(1, 2));
        let one = Some(rat_int(1));
        let p = PartialSymMatrix::new(vec![
            vec![one.clone(), Some(rat_int(2)), None, h.clone()],
            vec![Some(rat_int(2)), one.clone(), h.clone(), None],
            vec![None, h.clone(), one.clone(), h.clone()],
            vec![h.clone(), None, h.clone(), one.clone()],
        ])
        .unwrap();
        let r = complete_psd(&p);
        assert_eq!(r.method, CompletionMethod::Projection);
        match r.status {
            CompletionStatus::Infeasible(cert) => {
                assert_eq!(cert.indices, vec![0, 1]);
                assert!(!cert.block.is_psd());
            }
            other => panic!("expected Infeasible, got {other:?}"),
        }
    }

    #[test]
    fn principal_submatrices_of_random_psd_are_psd() {
        let mut rng = ChaCha8Rng::seed_from_u64(20260819);
        for _ in 0..20 {
            let a: Vec<Vec<i64>> = (0..3)
                .map(|_| (0..5).map(|_| rng.random_range(-3..=3)).collect())
                .collect();
            let g = SymMatrix::from_fn(5, |i, j| {
                rat_int((0..3).map(|k| a[k][i] * a[k][j]).sum())
            });
            assert!(g.is_psd());
            for size in [2usize, 3] {
                for mask in 0u32..32 {
                    if mask.count_ones() as usize != size {
                        continue;
                    }
                    let idx: Vec<usize> = (0..5).filter(|&i| mask & (1 << i) != 0).collect();
                    let sub = g.principal_submatrix(&idx);
                    assert!(det(&sub) >= Rat::zero(), "principal minor must be nonnegative");
                }
            }
        }
    }

    fn det(m: &SymMatrix) -> Rat {
        let rows: Vec<Vec<Poly>> = m
            .rows()
            .iter()
            .map(|r| r.iter().map(|v| Poly::constant(v.clone())).collect())
            .collect();
        poly_det(&rows).eval(&Rat::zero())
    }

    fn poly_det(rows: &[Vec<Poly>]) -> Poly {
        let n = rows.len();
        if n == 0 {
            return Poly::one();
        }
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = Poly::zero();
        for (col, cell) in rows[0].iter().enumerate() {
            let minor: Vec<Vec<Poly>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != col)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let term = cell * &poly_det(&minor);
            if col % 2 == 0 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        acc
    }

    // One unknown off-diagonal entry, small integer data. The feasible set
    // in the unknown is an interval; candidate points are a fine grid plus
    // the rational vertices of the principal-minor polynomials (degree <= 2
    // in the unknown), which include the touching point of any single-point
    // interval. The exact chordal path must agree with the scan.
    #[test]
    fn one_unknown_matches_grid_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut seen_completable = 0usize;
        let mut seen_infeasible = 0usize;
        for trial in 0..60 {
            let m = if trial % 3 == 2 { 4 } else { 3 };
            let mut entries: Vec<Vec<Option<Rat>>> = vec![vec![None; m]; m];
            for i in 0..m {
                entries[i][i] = Some(rat_int(rng.random_range(0..=4)));
                for j in 0..i {
                    let v = rat_int(rng.random_range(-3..=3));
                    entries[i][j] = Some(v.clone());
                    entries[j][i] = Some(v);
                }
            }
            let hole_i = rng.random_range(1..m);
            let hole_j = rng.random_range(0..hole_i);
            entries[hole_i][hole_j] = None;
            entries[hole_j][hole_i] = None;
            let p = PartialSymMatrix::new(entries).unwrap();

            let r = complete_psd(&p);
            assert_eq!(r.method, CompletionMethod::Chordal);

            let feasible = |x: &Rat| -> bool {
                let full = SymMatrix::from_fn(m, |i, j| {
                    if (i, j) == (hole_i, hole_j) || (i, j) == (hole_j, hole_i) {
                        x.clone()
                    } else {
                        p.get(i, j).unwrap().clone()
                    }
                });
                full.is_psd()
            };

            let mut candidates: Vec<Rat> = Vec::new();
            for k in -320i64..=320 {
                candidates.push(rat(k, 64));
            }
            // Rational critical points of every principal minor through the
            // unknown: vertices of the quadratics, roots of the linears.
            let xpoly = Poly::x();
            for mask in 1u32..(1 << m) {
                if mask & (1 << hole_i) == 0 || mask & (1 << hole_j) == 0 {
                    continue;
                }
                let idx: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
                let rows: Vec<Vec<Poly>> = idx
                    .iter()
                    .map(|&i| {
                        idx.iter()
                            .map(|&j| {
                                if (i, j) == (hole_i, hole_j) || (i, j) == (hole_j, hole_i) {
                                    xpoly.clone()
                                } else {
                                    Poly::constant(p.get(i, j).unwrap().clone())
                                }
                            })
                            .collect()
                    })
                    .collect();
                let d = poly_det(&rows);
                match d.degree() {
                    Some(2) => candidates.push(-d.coeff(1) / (d.coeff(2) * rat_int(2))),
                    Some(1) => candidates.push(-d.coeff(0) / d.coeff(1)),
                    _ => {}
                }
            }
            let scan_feasible = candidates.iter().any(feasible);

            match &r.status {
                CompletionStatus::Completable(w) => {
                    assert!(scan_feasible, "trial {trial}: scan missed a feasible value");
                    assert!(feasible(w.entry(hole_i, hole_j)));
                    seen_completable += 1;
                }
                CompletionStatus::Infeasible(cert) => {
                    assert!(!scan_feasible, "trial {trial}: certified infeasible but scan found a value");
                    assert!(!cert.block.is_psd());
                    for (a, &gi) in cert.indices.iter().enumerate() {
                        for (b, &gj) in cert.indices.iter().enumerate() {
                            assert_eq!(cert.block.entry(a, b), p.get(gi, gj).unwrap());
                        }
                    }
                    seen_infeasible += 1;
                }
                CompletionStatus::Unknown => panic!("chordal path must be exact"),
            }
        }
        assert!(seen_completable > 5 && seen_infeasible > 5);
    }

    #[test]
    fn solve_linear_system_handles_singular_consistent() {
        let a = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ];
        let b = vec![rat_int(3), rat_int(6)];
        let x = solve_linear_system(&a, &b).unwrap();
        let r0 = &a[0][0] * &x[0] + &a[0][1] * &x[1];
        assert_eq!(r0, rat_int(3));
        let inconsistent = solve_linear_system(&a, &[rat_int(3), rat_int(7)]);
        assert!(inconsistent.is_none());
    }
}
