//! Gram-matrix realizability of constrained-angle codes, exhaustive search
//! for codes of a target size, and probing whether an integer LP bound is
//! actually attained by a code.
//!
//! A spherical code of `m` points in dimension `n` with pairwise cosines in
//! an angle set `X` is exactly an `m x m` PSD matrix with unit diagonal,
//! off-diagonal entries in `X`, and rank at most `n`. Searching for one is a
//! combinatorial completion problem; the search here is an exact DFS with
//! PSD and rank pruning plus a sound symmetry-breaking order.

use crate::delsarte::{delsarte_bound, AngleSet, BoundRun, DelsarteError, StabilizeParams};
use crate::psd::SymMatrix;
use crate::rat::{Int, Rat};
use num::traits::ToPrimitive;
use num::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodesError {
    #[error("Gram diagonal entry {0} must be exactly 1")]
    NotUnitDiagonal(usize),
    #[error("off-diagonal entry ({0},{1}) is not in the angle set")]
    EntryOutsideAngles(usize, usize),
    #[error("code size must be at least 2")]
    SizeTooSmall,
}

/// A candidate code given by its Gram matrix: unit diagonal, every
/// off-diagonal entry in the angle set. Both invariants are validated on
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramCandidate {
    gram: SymMatrix,
    angles: AngleSet,
}

impl GramCandidate {
    pub fn new(gram: SymMatrix, angles: AngleSet) -> Result<Self, CodesError> {
        let one = Rat::one();
        for i in 0..gram.dim() {
            if gram.entry(i, i) != &one {
                return Err(CodesError::NotUnitDiagonal(i));
            }
            for j in 0..i {
                if !angles.contains(gram.entry(i, j)) {
                    return Err(CodesError::EntryOutsideAngles(j, i));
                }
            }
        }
        Ok(GramCandidate { gram, angles })
    }

    pub fn gram(&self) -> &SymMatrix {
        &self.gram
    }

    pub fn angles(&self) -> &AngleSet {
        &self.angles
    }

    pub fn size(&self) -> usize {
        self.gram.dim()
    }
}

/// A Gram matrix is realizable by unit vectors in dimension `n` exactly
/// when it is PSD of rank at most `n`.
pub fn realizable(candidate: &GramCandidate, dim: usize) -> bool {
    let gram = candidate.gram();
    gram.is_psd() && gram.psd_rank().expect("checked PSD") <= dim
}

/// The 10-point two-angle code in dimension 5: points indexed by 2-subsets
/// of a 5-set, cosine -1/3 between disjoint pairs and 1/3 between
/// overlapping ones.
pub fn petersen_gram() -> GramCandidate {
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .collect();
    let gram = SymMatrix::from_fn(10, |i, j| {
        if i == j {
            return Rat::one();
        }
        let (a, b) = pairs[i];
        let (c, d) = pairs[j];
        let disjoint = a != c && a != d && b != c && b != d;
        if disjoint {
            crate::rat::rat(-1, 3)
        } else {
            crate::rat::rat(1, 3)
        }
    });
    let angles = AngleSet::new(vec![crate::rat::rat(-1, 3), crate::rat::rat(1, 3)])
        .expect("two distinct admissible angles");
    GramCandidate::new(gram, angles).expect("unit diagonal by construction")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(GramCandidate),
    /// The whole pruned tree was traversed and no code exists.
    ExhaustedNoCode,
    /// The node budget ran out first; existence is undecided.
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub nodes: u64,
    pub budget: u64,
}

/// Exhaustive DFS for an `m`-point code in dimension `dim` with all
/// pairwise cosines in `angles`.
///
/// Entries are assigned point by point: column `c` holds the cosines of
/// point `c` against points `0..c`, filled top to bottom, candidate values
/// in descending order. Two sound prunings keep the tree small:
///
/// * once column `c` is complete, the leading `(c+1) x (c+1)` block must be
///   PSD with rank at most `dim` (principal blocks of a realizable Gram
///   are realizable);
/// * adjacent columns must satisfy the prefix order: on their shared rows
///   `0..c-1`, column `c-1` reads lexicographically at least column `c`.
///   Swapping two adjacent points turns a violation into a lexicographically
///   larger encoding, so the lex-maximal reordering of any code survives
///   this filter and the search stays complete.
///
/// Every visited assignment counts one node against the budget, and
/// `ExhaustedNoCode` is only returned when the full pruned tree was walked.
pub fn search_code(
    dim: usize,
    angles: &AngleSet,
    m: usize,
    budget: u64,
) -> Result<SearchResult, CodesError> {
    if m < 2 {
        return Err(CodesError::SizeTooSmall);
    }
    // Candidate values, largest first.
    let mut values: Vec<Rat> = angles.values().to_vec();
    values.reverse();
    let mut work = vec![vec![Rat::one(); m]; m];
    let mut nodes = 0u64;
    let mut factor = FactorStack::new();
    // Column 0 is the fixed unit diagonal; rank pruning starts at column 1,
    // exactly like a from-scratch check of the 2x2 leading block would.
    assert!(factor.try_push(&[], &Rat::one(), usize::MAX));
    let outcome = dfs(
        1, 0, true, dim, m, &values, &mut work, &mut factor, &mut nodes, budget,
    );
    let outcome = match outcome {
        Walk::Found => {
            let gram = SymMatrix::from_fn(m, |i, j| work[i][j].clone());
            let candidate =
                GramCandidate::new(gram, angles.clone()).expect("search assigns angle values");
            assert!(realizable(&candidate, dim), "found witness must be realizable");
            SearchOutcome::Found(candidate)
        }
        Walk::Exhausted => SearchOutcome::ExhaustedNoCode,
        Walk::OutOfBudget => SearchOutcome::BudgetExceeded,
    };
    Ok(SearchResult { outcome, nodes, budget })
}

enum Walk {
    Found,
    Exhausted,
    OutOfBudget,
}

/// Exact LDL^T factor of the leading Gram block, grown a column at a time
/// as the search completes columns and unwound on backtrack. `rows[i]`
/// holds row `i` of the unit lower-triangular factor (length `i`),
/// `pivots[i]` the diagonal of D. A zero pivot stands for an all-zero
/// reduced row, so later columns must reduce to zero there.
///
/// Extending by one column costs one forward substitution instead of
/// re-eliminating the whole block, and equals the natural-order symmetric
/// elimination that the from-scratch PSD/rank check performs.
struct FactorStack {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<Rat>,
    positive: usize,
}

impl FactorStack {
    fn new() -> Self {
        FactorStack { rows: Vec::new(), pivots: Vec::new(), positive: 0 }
    }

    fn len(&self) -> usize {
        self.pivots.len()
    }

    /// Extends the factor with the next Gram column (`v` above the diagonal,
    /// `diag` on it). Pushes and returns true iff the extended block is PSD
    /// with at most `max_rank` positive pivots; a failed push leaves the
    /// stack untouched.
    fn try_push(&mut self, v: &[Rat], diag: &Rat, max_rank: usize) -> bool {
        let k = self.len();
        debug_assert_eq!(v.len(), k);
        // Forward substitution y = L^{-1} v; y_i is the reduced (i, k) entry.
        let mut y: Vec<Rat> = Vec::with_capacity(k);
        for i in 0..k {
            let mut yi = v[i].clone();
            for (j, lij) in self.rows[i].iter().enumerate() {
                if !lij.is_zero() && !y[j].is_zero() {
                    yi -= lij * &y[j];
                }
            }
            y.push(yi);
        }
        let mut delta = diag.clone();
        let mut row = Vec::with_capacity(k);
        for i in 0..k {
            if self.pivots[i].is_zero() {
                // Zero pivot rows are zero in the reduced matrix; a nonzero
                // entry against them breaks positive semidefiniteness.
                if !y[i].is_zero() {
                    return false;
                }
                row.push(Rat::zero());
            } else {
                let li = &y[i] / &self.pivots[i];
                delta -= &li * &y[i];
                row.push(li);
            }
        }
        if delta.is_negative() {
            return false;
        }
        let pos = usize::from(delta.is_positive());
        if self.positive + pos > max_rank {
            return false;
        }
        self.rows.push(row);
        self.pivots.push(delta);
        self.positive += pos;
        true
    }

    fn pop(&mut self) {
        let delta = self.pivots.pop().expect("pop matches a successful push");
        self.rows.pop();
        self.positive -= usize::from(delta.is_positive());
    }
}

/// Recursive assignment of entry (row, col). `prefix_equal` tracks whether
/// columns col-1 and col agree on rows 0..row, which is when the prefix
/// order still constrains the next value. `factor` always holds the LDL^T
/// of the complete leading `col x col` block.
#[allow(clippy::too_many_arguments)]
fn dfs(
    col: usize,
    row: usize,
    prefix_equal: bool,
    dim: usize,
    m: usize,
    values: &[Rat],
    work: &mut Vec<Vec<Rat>>,
    factor: &mut FactorStack,
    nodes: &mut u64,
    budget: u64,
) -> Walk {
    if col == m {
        return Walk::Found;
    }
    for v in values {
        if *nodes >= budget {
            return Walk::OutOfBudget;
        }
        *nodes += 1;
        // Prefix order against the previous column on shared rows.
        let mut next_equal = prefix_equal;
        if col >= 2 && row < col - 1 && prefix_equal {
            let prev = &work[row][col - 1];
            if v > prev {
                continue;
            }
            next_equal = v == prev;
        }
        work[row][col] = v.clone();
        work[col][row] = v.clone();
        if row + 1 == col {
            // Column complete: the leading block must stay realizable
            // (PSD, rank at most dim), checked incrementally.
            let column: Vec<Rat> = (0..col).map(|i| work[i][col].clone()).collect();
            if !factor.try_push(&column, &Rat::one(), dim) {
                continue;
            }
            match dfs(col + 1, 0, true, dim, m, values, work, factor, nodes, budget) {
                Walk::Found => return Walk::Found,
                Walk::OutOfBudget => return Walk::OutOfBudget,
                Walk::Exhausted => factor.pop(),
            }
        } else {
            match dfs(col, row + 1, next_equal, dim, m, values, work, factor, nodes, budget) {
                Walk::Found => return Walk::Found,
                Walk::OutOfBudget => return Walk::OutOfBudget,
                Walk::Exhausted => {}
            }
        }
    }
    Walk::Exhausted
}

/// Probe outcome for an integer-valued LP bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// A code meeting the bound exactly was found.
    Sharp(GramCandidate),
    /// The bound is an integer but the exhaustive search proved no code of
    /// that size exists: the LP value is not attained.
    HallucinationCandidate,
    /// Non-integer bound, unstabilized escalation, or search budget
    /// exhausted; nothing is claimed.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeVerdict {
    pub bound_floor: Option<Int>,
    pub outcome: ProbeOutcome,
    pub nodes: u64,
    pub budget: u64,
    /// The full escalation run backing the bound.
    pub run: BoundRun,
}

/// Computes the stabilized LP bound, and when `bound_raw` is an exact
/// integer, searches for a code of exactly that size. `Sharp` carries the
/// witness; `HallucinationCandidate` means the search space was exhausted,
/// so the integer bound is not attained by any code.
pub fn hallucination_probe(
    dim: usize,
    angles: &AngleSet,
    params: &StabilizeParams,
    budget: u64,
) -> Result<ProbeVerdict, DelsarteError> {
    let run = delsarte_bound(dim, angles, params)?;
    let bound_floor = run.certificate.bound_floor.clone();
    // An unstabilized certificate is only the best cap tried; its value is
    // a valid bound but not the settled LP optimum, so nothing is searched.
    let target = run
        .certificate
        .bound_raw
        .as_ref()
        .filter(|raw| run.stabilized && raw.is_integer())
        .and_then(|raw| raw.to_integer().to_usize());
    let Some(m) = target.filter(|&m| m >= 2) else {
        return Ok(ProbeVerdict {
            bound_floor,
            outcome: ProbeOutcome::Inconclusive,
            nodes: 0,
            budget,
            run,
        });
    };
    let search = search_code(dim, angles, m, budget).expect("target size is at least 2");
    let outcome = match search.outcome {
        SearchOutcome::Found(witness) => ProbeOutcome::Sharp(witness),
        SearchOutcome::ExhaustedNoCode => ProbeOutcome::HallucinationCandidate,
        SearchOutcome::BudgetExceeded => ProbeOutcome::Inconclusive,
    };
    Ok(ProbeVerdict {
        bound_floor,
        outcome,
        nodes: search.nodes,
        budget,
        run,
    })
}
