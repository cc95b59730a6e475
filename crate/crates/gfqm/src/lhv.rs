//! Theory-independent correlation analysis for bipartite +-1 outcome tables.
//!
//! A [`BipartiteTable`] holds the joint outcome distribution for every pair
//! of detector settings. This module evaluates the CHSH combination
//!
//! ```text
//! | E(a,b) + E(a,b') + E(a',b) - E(a',b') |
//! ```
//!
//! exactly, decides whether the table is a convex mixture of deterministic
//! local strategies (an exact rational phase-1 simplex with Bland's
//! anti-cycling rule, so infeasibility is a certificate rather than a
//! tolerance call), checks no-signaling of the marginals, and reproduces the
//! forced-value implication chain that rules out hidden-variable completions
//! of tables with the singlet's zero pattern.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{rat, rational_string, Error, Rational, Result};

/// Outcome order used for every 4-entry probability block.
pub const OUTCOMES: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

fn outcome_name(o: (i8, i8)) -> &'static str {
    match o {
        (1, 1) => "++",
        (1, -1) => "+-",
        (-1, 1) => "-+",
        (-1, -1) => "--",
        _ => unreachable!(),
    }
}

fn sign_name(s: i8) -> &'static str {
    if s > 0 {
        "+1"
    } else {
        "-1"
    }
}

/// Joint setting-by-setting outcome distributions for two parties.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteTable {
    settings_a: Vec<String>,
    settings_b: Vec<String>,
    /// Row-major over (a-setting, b-setting); each cell is `++, +-, -+, --`.
    cells: Vec<[Rational; 4]>,
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    settings_a: Vec<String>,
    settings_b: Vec<String>,
    cells: Vec<CellDoc>,
}

#[derive(Serialize, Deserialize)]
struct CellDoc {
    a: String,
    b: String,
    p_pp: String,
    p_pm: String,
    p_mp: String,
    p_mm: String,
}

impl BipartiteTable {
    /// Validates that every cell is a distribution: entries nonnegative and
    /// summing to exactly 1.
    pub fn new(
        settings_a: Vec<String>,
        settings_b: Vec<String>,
        cells: Vec<[Rational; 4]>,
    ) -> Result<BipartiteTable> {
        if settings_a.is_empty() || settings_b.is_empty() {
            return Err(Error::BadTable("each side needs at least one setting".into()));
        }
        if cells.len() != settings_a.len() * settings_b.len() {
            return Err(Error::BadTable(format!(
                "expected {} cells, got {}",
                settings_a.len() * settings_b.len(),
                cells.len()
            )));
        }
        for (k, cell) in cells.iter().enumerate() {
            if cell.iter().any(Signed::is_negative) {
                return Err(Error::BadTable(format!("cell {k} has a negative entry")));
            }
            let total: Rational = cell.iter().cloned().sum();
            if !total.is_one() {
                return Err(Error::BadTable(format!(
                    "cell {k} sums to {}, not 1",
                    rational_string(&total)
                )));
            }
        }
        Ok(BipartiteTable {
            settings_a,
            settings_b,
            cells,
        })
    }

    pub fn settings_a(&self) -> &[String] {
        &self.settings_a
    }

    pub fn settings_b(&self) -> &[String] {
        &self.settings_b
    }

    pub fn cell(&self, a: usize, b: usize) -> &[Rational; 4] {
        &self.cells[a * self.settings_b.len() + b]
    }

    pub fn probability(&self, a: usize, b: usize, outcome: (i8, i8)) -> Rational {
        let k = OUTCOMES
            .iter()
            .position(|&o| o == outcome)
            .expect("outcome labels are +-1");
        self.cell(a, b)[k].clone()
    }

    /// Correlator `E(a,b) = sum s*t P(s,t|a,b)`.
    pub fn correlator(&self, a: usize, b: usize) -> Rational {
        let cell = self.cell(a, b);
        let mut acc = Rational::zero();
        for (k, (s, t)) in OUTCOMES.iter().enumerate() {
            acc += &cell[k] * rat((s * t) as i64, 1);
        }
        acc
    }

    fn check_setting(&self, index: usize, side_b: bool) -> Result<()> {
        let count = if side_b {
            self.settings_b.len()
        } else {
            self.settings_a.len()
        };
        if index >= count {
            return Err(Error::UnknownSetting { index, count });
        }
        Ok(())
    }

    /// Marginal for one party's outcome at a given setting pair.
    pub fn marginal_a(&self, a: usize, b: usize, outcome: i8) -> Rational {
        let cell = self.cell(a, b);
        OUTCOMES
            .iter()
            .enumerate()
            .filter(|(_, (s, _))| *s == outcome)
            .map(|(k, _)| cell[k].clone())
            .sum()
    }

    pub fn marginal_b(&self, a: usize, b: usize, outcome: i8) -> Rational {
        let cell = self.cell(a, b);
        OUTCOMES
            .iter()
            .enumerate()
            .filter(|(_, (_, t))| *t == outcome)
            .map(|(k, _)| cell[k].clone())
            .sum()
    }

    /// Serializes to the structured text document (probabilities as
    /// `num/den` strings). Round-trips exactly.
    pub fn to_document(&self) -> String {
        let mut cells = Vec::new();
        for (i, a) in self.settings_a.iter().enumerate() {
            for (j, b) in self.settings_b.iter().enumerate() {
                let cell = self.cell(i, j);
                cells.push(CellDoc {
                    a: a.clone(),
                    b: b.clone(),
                    p_pp: rational_string(&cell[0]),
                    p_pm: rational_string(&cell[1]),
                    p_mp: rational_string(&cell[2]),
                    p_mm: rational_string(&cell[3]),
                });
            }
        }
        let doc = TableDoc {
            settings_a: self.settings_a.clone(),
            settings_b: self.settings_b.clone(),
            cells,
        };
        serde_json::to_string_pretty(&doc).expect("document structs always serialize")
    }

    /// Parses the structured text document, reporting the offending field on
    /// failure.
    pub fn from_document(text: &str) -> Result<BipartiteTable> {
        let doc: TableDoc = serde_json::from_str(text)
            .map_err(|e| Error::TableFormat(e.to_string()))?;
        let na = doc.settings_a.len();
        let nb = doc.settings_b.len();
        let mut cells: Vec<Option<[Rational; 4]>> = vec![None; na * nb];
        for (k, cell) in doc.cells.iter().enumerate() {
            let i = doc
                .settings_a
                .iter()
                .position(|s| s == &cell.a)
                .ok_or_else(|| {
                    Error::TableFormat(format!("cells[{k}].a: unknown setting {:?}", cell.a))
                })?;
            let j = doc
                .settings_b
                .iter()
                .position(|s| s == &cell.b)
                .ok_or_else(|| {
                    Error::TableFormat(format!("cells[{k}].b: unknown setting {:?}", cell.b))
                })?;
            if cells[i * nb + j].is_some() {
                return Err(Error::TableFormat(format!(
                    "cells[{k}]: duplicate cell for ({:?}, {:?})",
                    cell.a, cell.b
                )));
            }
            let parse = |field: &str, value: &str| {
                crate::parse_rational(value)
                    .map_err(|e| Error::TableFormat(format!("cells[{k}].{field}: {e}")))
            };
            cells[i * nb + j] = Some([
                parse("p_pp", &cell.p_pp)?,
                parse("p_pm", &cell.p_pm)?,
                parse("p_mp", &cell.p_mp)?,
                parse("p_mm", &cell.p_mm)?,
            ]);
        }
        let mut resolved = Vec::with_capacity(na * nb);
        for i in 0..na {
            for j in 0..nb {
                resolved.push(cells[i * nb + j].take().ok_or_else(|| {
                    Error::TableFormat(format!(
                        "missing cell for ({:?}, {:?})",
                        doc.settings_a[i], doc.settings_b[j]
                    ))
                })?);
            }
        }
        BipartiteTable::new(doc.settings_a, doc.settings_b, resolved)
    }

    /// The maximal no-signaling box: perfectly correlated except when both
    /// settings are 1, where it anticorrelates. Its CHSH value is 4.
    pub fn pr_box() -> BipartiteTable {
        let half = rat(1, 2);
        let zero = Rational::zero;
        let corr = [half.clone(), zero(), zero(), half.clone()];
        let anti = [zero(), half.clone(), half, zero()];
        BipartiteTable::new(
            vec!["a0".into(), "a1".into()],
            vec!["b0".into(), "b1".into()],
            vec![corr.clone(), corr.clone(), corr, anti],
        )
        .expect("preset is a valid table")
    }

    /// Two independent fair coins: every cell is uniform.
    pub fn independent_coins() -> BipartiteTable {
        let quarter = || rat(1, 4);
        let cell = [quarter(), quarter(), quarter(), quarter()];
        BipartiteTable::new(
            vec!["a0".into(), "a1".into()],
            vec!["b0".into(), "b1".into()],
            vec![cell.clone(), cell.clone(), cell.clone(), cell],
        )
        .expect("preset is a valid table")
    }

    /// A fully deterministic table (A always +1, B always -1); trivially
    /// reproduced by a single strategy.
    pub fn deterministic_anticorrelated() -> BipartiteTable {
        let cell = [
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
        ];
        BipartiteTable::new(
            vec!["a0".into(), "a1".into()],
            vec!["b0".into(), "b1".into()],
            vec![cell.clone(), cell.clone(), cell.clone(), cell],
        )
        .expect("preset is a valid table")
    }
}

/// The CHSH combination for one ordered setting quadruple.
pub fn chsh_functional(
    table: &BipartiteTable,
    a: usize,
    a_prime: usize,
    b: usize,
    b_prime: usize,
) -> Result<Rational> {
    for i in [a, a_prime] {
        table.check_setting(i, false)?;
    }
    for j in [b, b_prime] {
        table.check_setting(j, true)?;
    }
    let value = table.correlator(a, b) + table.correlator(a, b_prime) + table.correlator(a_prime, b)
        - table.correlator(a_prime, b_prime);
    Ok(value.abs())
}

/// Maximum of the CHSH combination over the sign placements (which of the
/// four correlators carries the minus sign); with both orders of each
/// setting pair this covers all 8 classical symmetrizations.
pub fn chsh_placements_max(
    table: &BipartiteTable,
    a: usize,
    a_prime: usize,
    b: usize,
    b_prime: usize,
) -> Result<Rational> {
    table.check_setting(a, false)?;
    table.check_setting(a_prime, false)?;
    table.check_setting(b, true)?;
    table.check_setting(b_prime, true)?;
    let e = [
        table.correlator(a, b),
        table.correlator(a, b_prime),
        table.correlator(a_prime, b),
        table.correlator(a_prime, b_prime),
    ];
    let mut best = Rational::zero();
    for negated in 0..4 {
        let mut acc = Rational::zero();
        for (k, v) in e.iter().enumerate() {
            if k == negated {
                acc -= v;
            } else {
                acc += v;
            }
        }
        best = best.max(acc.abs());
    }
    Ok(best)
}

/// Maximum CHSH value over every setting quadruple and sign placement.
pub fn chsh_table_max(table: &BipartiteTable) -> Rational {
    let na = table.settings_a.len();
    let nb = table.settings_b.len();
    let mut best = Rational::zero();
    for a in 0..na {
        for ap in 0..na {
            for b in 0..nb {
                for bp in 0..nb {
                    let v = chsh_placements_max(table, a, ap, b, bp)
                        .expect("indices in range");
                    best = best.max(v);
                }
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------
// local hidden variable feasibility
// ---------------------------------------------------------------------------

/// Upper bound on `|A| + |B|`; 8 settings mean 256 deterministic strategies.
pub const MAX_SETTINGS: usize = 8;

/// A deterministic local strategy: one fixed +-1 answer per setting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterministicStrategy {
    pub value_a: Vec<i8>,
    pub value_b: Vec<i8>,
}

impl DeterministicStrategy {
    pub fn produces(&self, a: usize, b: usize, outcome: (i8, i8)) -> bool {
        self.value_a[a] == outcome.0 && self.value_b[b] == outcome.1
    }

    pub fn label(&self) -> String {
        let fmt = |vals: &[i8]| -> String {
            vals.iter().map(|v| if *v > 0 { '+' } else { '-' }).collect()
        };
        format!("A:{} B:{}", fmt(&self.value_a), fmt(&self.value_b))
    }
}

/// All `2^(|A|+|B|)` deterministic strategies in a fixed order (bit 0 of the
/// strategy index is the first A setting; a zero bit means outcome +1).
pub fn deterministic_strategies(na: usize, nb: usize) -> Vec<DeterministicStrategy> {
    let total = na + nb;
    (0..1u32 << total)
        .map(|mask| {
            let sign = |bit: usize| if mask >> bit & 1 == 0 { 1i8 } else { -1 };
            DeterministicStrategy {
                value_a: (0..na).map(sign).collect(),
                value_b: (0..nb).map(|j| sign(na + j)).collect(),
            }
        })
        .collect()
}

/// A separating functional proving no strategy mixture matches the table:
/// `y . column(s) <= 0` for every deterministic strategy `s`, yet
/// `y . table > 0`.
#[derive(Clone, Debug)]
pub struct InfeasibilityCertificate {
    /// One multiplier per table entry, cells row major, outcomes in
    /// [`OUTCOMES`] order.
    pub row_multipliers: Vec<Rational>,
    /// Maximum of `y . column(s)` over all strategies (nonpositive).
    pub strategy_ceiling: Rational,
    /// `y . table`, strictly positive.
    pub table_value: Rational,
}

impl InfeasibilityCertificate {
    pub fn description(&self) -> String {
        format!(
            "separating functional: every deterministic strategy scores <= {} but the table scores {}",
            rational_string(&self.strategy_ceiling),
            rational_string(&self.table_value)
        )
    }
}

/// Outcome of the hidden-variable feasibility oracle.
#[derive(Clone, Debug)]
pub struct FeasibilityResult {
    pub feasible: bool,
    /// Nonzero mixture weights when feasible; they recompose the table
    /// exactly.
    pub weights: Vec<(DeterministicStrategy, Rational)>,
    pub certificate: Option<InfeasibilityCertificate>,
}

/// Decides whether the table is a convex mixture of deterministic local
/// strategies, by exact phase-1 simplex over the rationals with Bland's
/// pivot rule.
pub fn lhv_feasible(table: &BipartiteTable) -> Result<FeasibilityResult> {
    let na = table.settings_a.len();
    let nb = table.settings_b.len();
    if na + nb > MAX_SETTINGS {
        return Err(Error::TooManySettings {
            total: na + nb,
            limit: MAX_SETTINGS,
        });
    }
    let strategies = deterministic_strategies(na, nb);
    let rows = 4 * na * nb;
    let cols = strategies.len();

    // equality system: for every (cell, outcome), the mixture must hit the
    // table entry exactly; the per-cell normalization makes sum w = 1
    let mut matrix = vec![vec![Rational::zero(); cols]; rows];
    let mut rhs = vec![Rational::zero(); rows];
    let mut row = 0;
    for i in 0..na {
        for j in 0..nb {
            for (k, &outcome) in OUTCOMES.iter().enumerate() {
                for (s, strat) in strategies.iter().enumerate() {
                    if strat.produces(i, j, outcome) {
                        matrix[row][s] = Rational::one();
                    }
                }
                rhs[row] = table.cell(i, j)[k].clone();
                row += 1;
            }
        }
    }

    let outcome = phase_one_simplex(&matrix, &rhs);
    match outcome {
        PhaseOne::Feasible(solution) => {
            let mut weights = Vec::new();
            for (s, w) in solution.iter().enumerate() {
                if !w.is_zero() {
                    weights.push((strategies[s].clone(), w.clone()));
                }
            }
            // soundness: the decomposition must recompose the table
            for i in 0..na {
                for j in 0..nb {
                    for (k, &outcome) in OUTCOMES.iter().enumerate() {
                        let total: Rational = weights
                            .iter()
                            .filter(|(s, _)| s.produces(i, j, outcome))
                            .map(|(_, w)| w.clone())
                            .sum();
                        if total != table.cell(i, j)[k] {
                            return Err(Error::Internal(
                                "feasible decomposition does not recompose the table".into(),
                            ));
                        }
                    }
                }
            }
            Ok(FeasibilityResult {
                feasible: true,
                weights,
                certificate: None,
            })
        }
        PhaseOne::Infeasible(y) => {
            // Farkas check: the multipliers must separate the table from
            // every strategy column
            let mut ceiling: Option<Rational> = None;
            for strat in &strategies {
                let mut score = Rational::zero();
                let mut r = 0;
                for i in 0..na {
                    for j in 0..nb {
                        for &outcome in OUTCOMES.iter() {
                            if strat.produces(i, j, outcome) {
                                score += &y[r];
                            }
                            r += 1;
                        }
                    }
                }
                if score.is_positive() {
                    return Err(Error::Internal(
                        "infeasibility certificate fails on a strategy column".into(),
                    ));
                }
                ceiling = Some(match ceiling {
                    None => score,
                    Some(c) => c.max(score),
                });
            }
            let table_value: Rational = y
                .iter()
                .zip(rhs.iter())
                .map(|(yi, bi)| yi * bi)
                .sum();
            if !table_value.is_positive() {
                return Err(Error::Internal(
                    "infeasibility certificate does not separate the table".into(),
                ));
            }
            Ok(FeasibilityResult {
                feasible: false,
                weights: Vec::new(),
                certificate: Some(InfeasibilityCertificate {
                    row_multipliers: y,
                    strategy_ceiling: ceiling.expect("at least one strategy"),
                    table_value,
                }),
            })
        }
    }
}

enum PhaseOne {
    /// Values of the original variables.
    Feasible(Vec<Rational>),
    /// Farkas multipliers, one per row.
    Infeasible(Vec<Rational>),
}

/// Phase-1 simplex for `Ax = b, x >= 0` with `b >= 0`: minimizes the sum of
/// artificial variables. Bland's smallest-index rule on entering and leaving
/// variables guarantees termination.
fn phase_one_simplex(matrix: &[Vec<Rational>], rhs: &[Rational]) -> PhaseOne {
    let m = matrix.len();
    let n = matrix[0].len();
    debug_assert!(rhs.iter().all(|b| !b.is_negative()));

    // tableau columns: n original, m artificial, 1 rhs
    let width = n + m + 1;
    let mut t = vec![vec![Rational::zero(); width]; m];
    for i in 0..m {
        t[i][..n].clone_from_slice(&matrix[i]);
        t[i][n + i] = Rational::one();
        t[i][n + m] = rhs[i].clone();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // reduced costs for min(sum of artificials): r_j = c_j - sum_i t[i][j]
    let mut reduced = vec![Rational::zero(); width];
    for row in t.iter() {
        for (slot, x) in reduced.iter_mut().zip(row) {
            *slot -= x;
        }
    }
    for r in reduced[n..n + m].iter_mut() {
        *r += Rational::one();
    }
    // reduced[width-1] now holds -objective

    loop {
        let entering = (0..n + m).find(|&j| reduced[j].is_negative());
        let Some(col) = entering else {
            break;
        };
        // ratio test with Bland tie-breaking on the leaving variable index
        let mut pivot: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][col].is_positive() {
                continue;
            }
            let ratio = &t[i][n + m] / &t[i][col];
            pivot = Some(match pivot {
                None => (i, ratio),
                Some((bi, br)) => {
                    if ratio < br || (ratio == br && basis[i] < basis[bi]) {
                        (i, ratio)
                    } else {
                        (bi, br)
                    }
                }
            });
        }
        let (prow, _) = pivot.expect("phase-1 objective is bounded below by zero");

        // pivot on (prow, col)
        let inv = t[prow][col].clone().recip();
        for x in t[prow].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = t[prow].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == prow || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (slot, p) in row.iter_mut().zip(&pivot_row) {
                *slot -= &factor * p;
            }
        }
        if !reduced[col].is_zero() {
            let factor = reduced[col].clone();
            for (slot, p) in reduced.iter_mut().zip(&pivot_row) {
                *slot -= &factor * p;
            }
        }
        basis[prow] = col;
    }

    let objective = -reduced[n + m].clone();
    if objective.is_zero() {
        let mut solution = vec![Rational::zero(); n];
        for (i, &var) in basis.iter().enumerate() {
            if var < n {
                solution[var] = t[i][n + m].clone();
            }
        }
        PhaseOne::Feasible(solution)
    } else {
        // simplex multipliers: y_i = c_art(i) - reduced_art(i) = 1 - r_{n+i}
        let y = (0..m)
            .map(|i| Rational::one() - &reduced[n + i])
            .collect();
        PhaseOne::Infeasible(y)
    }
}

// ---------------------------------------------------------------------------
// no-signaling
// ---------------------------------------------------------------------------

/// One marginal that shifts with the far party's setting choice.
#[derive(Clone, Debug)]
pub struct MarginalViolation {
    /// 'A' when A's marginal depends on B's setting, 'B' for the reverse.
    pub side: char,
    pub setting: usize,
    pub outcome: i8,
    /// The two far-party settings compared.
    pub partners: (usize, usize),
    pub values: (Rational, Rational),
}

impl MarginalViolation {
    pub fn description(&self, table: &BipartiteTable) -> String {
        let (own, far): (&[String], &[String]) = if self.side == 'A' {
            (&table.settings_a, &table.settings_b)
        } else {
            (&table.settings_b, &table.settings_a)
        };
        let far_side = if self.side == 'A' { 'B' } else { 'A' };
        format!(
            "side {}: P({}={}) is {} when {} measures {} but {} when it measures {}",
            self.side,
            own[self.setting],
            sign_name(self.outcome),
            rational_string(&self.values.0),
            far_side,
            far[self.partners.0],
            rational_string(&self.values.1),
            far[self.partners.1],
        )
    }
}

#[derive(Clone, Debug)]
pub struct NoSignalingReport {
    pub pass: bool,
    pub violations: Vec<MarginalViolation>,
}

/// Exact marginal-consistency check: each party's outcome distribution must
/// not depend on the other party's setting.
pub fn no_signaling_check(table: &BipartiteTable) -> NoSignalingReport {
    let na = table.settings_a.len();
    let nb = table.settings_b.len();
    let mut violations = Vec::new();
    for i in 0..na {
        for outcome in [1i8, -1] {
            let reference = table.marginal_a(i, 0, outcome);
            for j in 1..nb {
                let value = table.marginal_a(i, j, outcome);
                if value != reference {
                    violations.push(MarginalViolation {
                        side: 'A',
                        setting: i,
                        outcome,
                        partners: (0, j),
                        values: (reference.clone(), value),
                    });
                }
            }
        }
    }
    for j in 0..nb {
        for outcome in [1i8, -1] {
            let reference = table.marginal_b(0, j, outcome);
            for i in 1..na {
                let value = table.marginal_b(i, j, outcome);
                if value != reference {
                    violations.push(MarginalViolation {
                        side: 'B',
                        setting: j,
                        outcome,
                        partners: (0, i),
                        values: (reference.clone(), value),
                    });
                }
            }
        }
    }
    NoSignalingReport {
        pass: violations.is_empty(),
        violations,
    }
}

// ---------------------------------------------------------------------------
// forced-value implication chains
// ---------------------------------------------------------------------------

/// A positive-probability outcome no zero-cell-consistent deterministic
/// strategy can produce.
#[derive(Clone, Debug, PartialEq)]
pub struct ExcludedOutcome {
    pub a_setting: usize,
    pub b_setting: usize,
    pub outcome: (i8, i8),
    pub probability: Rational,
}

/// Propagation transcript for one starting assumption.
#[derive(Clone, Debug)]
pub struct BranchTranscript {
    pub assumption: String,
    pub steps: Vec<String>,
    pub contradiction: bool,
}

#[derive(Clone, Debug)]
pub struct HardyChainReport {
    /// True when at least one positive-probability outcome is excluded by
    /// every deterministic completion (so no hidden-variable model exists).
    pub closes: bool,
    pub zero_cells: Vec<(usize, usize, (i8, i8))>,
    pub branches: Vec<BranchTranscript>,
    pub excluded: Vec<ExcludedOutcome>,
    /// Strategies compatible with every zero cell.
    pub consistent_strategies: Vec<DeterministicStrategy>,
}

/// Reproduces the implication-chain argument on a 2x2-setting table: zero
/// cells force partner values; outcomes with positive probability that
/// survive in no deterministic completion close the chain.
pub fn hardy_chain_check(table: &BipartiteTable) -> Result<HardyChainReport> {
    let na = table.settings_a.len();
    let nb = table.settings_b.len();
    if na != 2 || nb != 2 {
        return Err(Error::NotTwoByTwo { a: na, b: nb });
    }

    let mut zero_cells = Vec::new();
    for i in 0..na {
        for j in 0..nb {
            for (k, &outcome) in OUTCOMES.iter().enumerate() {
                if table.cell(i, j)[k].is_zero() {
                    zero_cells.push((i, j, outcome));
                }
            }
        }
    }

    let consistent: Vec<DeterministicStrategy> = deterministic_strategies(na, nb)
        .into_iter()
        .filter(|s| {
            zero_cells
                .iter()
                .all(|&(i, j, outcome)| !s.produces(i, j, outcome))
        })
        .collect();

    let mut excluded = Vec::new();
    for i in 0..na {
        for j in 0..nb {
            for (k, &outcome) in OUTCOMES.iter().enumerate() {
                let p = &table.cell(i, j)[k];
                if p.is_positive() && !consistent.iter().any(|s| s.produces(i, j, outcome)) {
                    excluded.push(ExcludedOutcome {
                        a_setting: i,
                        b_setting: j,
                        outcome,
                        probability: p.clone(),
                    });
                }
            }
        }
    }

    let branches = [1i8, -1]
        .into_iter()
        .map(|start| propagate_branch(table, &zero_cells, start))
        .collect();

    Ok(HardyChainReport {
        closes: !excluded.is_empty(),
        zero_cells,
        branches,
        excluded,
        consistent_strategies: consistent,
    })
}

/// Unit propagation from an assignment of the first A setting across the
/// zero cells, narrating each forced value.
fn propagate_branch(
    table: &BipartiteTable,
    zero_cells: &[(usize, usize, (i8, i8))],
    start: i8,
) -> BranchTranscript {
    // settings are tagged with the particle they sit on, since both sides
    // often reuse the same observable names
    let names_a: Vec<String> = table
        .settings_a
        .iter()
        .map(|s| format!("{s}[1]"))
        .collect();
    let names_b: Vec<String> = table
        .settings_b
        .iter()
        .map(|s| format!("{s}[2]"))
        .collect();
    let mut a_vals: [Option<i8>; 2] = [Some(start), None];
    let mut b_vals: [Option<i8>; 2] = [None, None];
    let mut steps = Vec::new();
    let assumption = format!("assume {}={}", names_a[0], sign_name(start));

    loop {
        let mut changed = false;
        for &(i, j, (oa, ob)) in zero_cells {
            let cell_name = format!(
                "P({},{};{})=0",
                names_a[i],
                names_b[j],
                outcome_name((oa, ob))
            );
            match (a_vals[i], b_vals[j]) {
                (Some(va), None) if va == oa => {
                    b_vals[j] = Some(-ob);
                    steps.push(format!(
                        "{}={} and {} force {}={}",
                        names_a[i],
                        sign_name(va),
                        cell_name,
                        names_b[j],
                        sign_name(-ob)
                    ));
                    changed = true;
                }
                (None, Some(vb)) if vb == ob => {
                    a_vals[i] = Some(-oa);
                    steps.push(format!(
                        "{}={} and {} force {}={}",
                        names_b[j],
                        sign_name(vb),
                        cell_name,
                        names_a[i],
                        sign_name(-oa)
                    ));
                    changed = true;
                }
                (Some(va), Some(vb)) if va == oa && vb == ob => {
                    steps.push(format!(
                        "{}={} and {}={} contradict {}",
                        names_a[i],
                        sign_name(va),
                        names_b[j],
                        sign_name(vb),
                        cell_name
                    ));
                    return BranchTranscript {
                        assumption,
                        steps,
                        contradiction: true,
                    };
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    BranchTranscript {
        assumption,
        steps,
        contradiction: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pr_box_chsh_is_four() {
        let t = BipartiteTable::pr_box();
        assert_eq!(chsh_functional(&t, 0, 1, 0, 1).unwrap(), rat(4, 1));
        assert_eq!(chsh_table_max(&t), rat(4, 1));
    }

    #[test]
    fn independent_coins_have_zero_correlators() {
        let t = BipartiteTable::independent_coins();
        assert_eq!(chsh_table_max(&t), rat(0, 1));
    }

    #[test]
    fn independent_coins_are_feasible_with_exact_weights() {
        let t = BipartiteTable::independent_coins();
        let r = lhv_feasible(&t).unwrap();
        assert!(r.feasible);
        let total: Rational = r.weights.iter().map(|(_, w)| w.clone()).sum();
        assert!(total.is_one());
    }

    #[test]
    fn pr_box_is_infeasible_with_certificate() {
        let r = lhv_feasible(&BipartiteTable::pr_box()).unwrap();
        assert!(!r.feasible);
        let cert = r.certificate.unwrap();
        assert!(cert.table_value.is_positive());
        assert!(!cert.strategy_ceiling.is_positive());
    }

    #[test]
    fn deterministic_table_is_feasible() {
        let r = lhv_feasible(&BipartiteTable::deterministic_anticorrelated()).unwrap();
        assert!(r.feasible);
        assert_eq!(r.weights.len(), 1);
        assert!(r.weights[0].1.is_one());
    }

    #[test]
    fn pr_box_passes_no_signaling() {
        assert!(no_signaling_check(&BipartiteTable::pr_box()).pass);
        assert!(no_signaling_check(&BipartiteTable::independent_coins()).pass);
    }

    #[test]
    fn signaling_table_is_reported() {
        // B's marginal depends on A's setting
        let cell_even = [rat(1, 2), Rational::zero(), Rational::zero(), rat(1, 2)];
        let cell_biased = [rat(1, 1), Rational::zero(), Rational::zero(), Rational::zero()];
        let t = BipartiteTable::new(
            vec!["a0".into(), "a1".into()],
            vec!["b0".into()],
            vec![cell_even, cell_biased],
        )
        .unwrap();
        let report = no_signaling_check(&t);
        assert!(!report.pass);
        assert!(report.violations.iter().all(|v| v.side == 'B'));
    }

    #[test]
    fn hardy_chain_on_deterministic_table_does_not_close() {
        let report = hardy_chain_check(&BipartiteTable::deterministic_anticorrelated()).unwrap();
        assert!(!report.closes);
        assert!(report.excluded.is_empty());
        assert!(!report.consistent_strategies.is_empty());
    }

    #[test]
    fn hardy_chain_on_pr_box_excludes_everything() {
        // no deterministic strategy respects all of the PR box's zero cells
        let report = hardy_chain_check(&BipartiteTable::pr_box()).unwrap();
        assert!(report.consistent_strategies.is_empty());
        assert!(report.closes);
        assert_eq!(report.excluded.len(), 8);
    }

    #[test]
    fn document_round_trip() {
        let t = BipartiteTable::pr_box();
        let text = t.to_document();
        let back = BipartiteTable::from_document(&text).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn document_errors_carry_field_context() {
        let text = r#"{
            "settings_a": ["a0"],
            "settings_b": ["b0"],
            "cells": [{"a": "a0", "b": "b0", "p_pp": "x", "p_pm": "0/1", "p_mp": "0/1", "p_mm": "0/1"}]
        }"#;
        let err = BipartiteTable::from_document(text).unwrap_err();
        assert!(err.to_string().contains("cells[0].p_pp"), "{err}");
    }

    #[test]
    fn table_validation_rejects_bad_sums() {
        let cell = [rat(1, 2), rat(1, 2), rat(1, 2), Rational::zero()];
        let err = BipartiteTable::new(vec!["a".into()], vec!["b".into()], vec![cell]);
        assert!(matches!(err, Err(Error::BadTable(_))));
    }

    #[test]
    fn settings_guard() {
        let quarter = || rat(1, 4);
        let cell = [quarter(), quarter(), quarter(), quarter()];
        let t = BipartiteTable::new(
            (0..5).map(|i| format!("a{i}")).collect(),
            (0..4).map(|j| format!("b{j}")).collect(),
            vec![cell; 20],
        )
        .unwrap();
        assert!(matches!(
            lhv_feasible(&t),
            Err(Error::TooManySettings { total: 9, .. })
        ));
    }

    #[test]
    fn strategy_enumeration_order_is_stable() {
        let strategies = deterministic_strategies(1, 1);
        assert_eq!(strategies[0].value_a, vec![1]);
        assert_eq!(strategies[0].value_b, vec![1]);
        assert_eq!(strategies[1].value_a, vec![-1]);
        assert_eq!(strategies[3].value_b, vec![-1]);
    }
}
