//! Deterministic run reports for the command-line surface.
//!
//! Every command produces a [`RunReport`] — a command echo, the parameters,
//! and a list of tabular sections — which renders to text, JSON or CSV.
//! All numbers are exact strings (`num/den` for rationals), every ordering is
//! fixed, and no timestamps or environment details leak in, so identical
//! invocations are byte-identical.

use serde::Serialize;

use crate::bqm::{Bqm, HermitianAnalog};
use crate::gqm::{Gqm, SearchScope};
use crate::lhv::{
    chsh_table_max, hardy_chain_check, lhv_feasible, no_signaling_check, BipartiteTable,
};
use crate::linalg::Matrix;
use crate::{rational_string, Error, Rational, Result};

/// How the numbers in a section arise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// Exact evaluation of a fixed expression or catalog.
    Exact,
    /// Result of an exhaustive enumeration or search.
    Exhaustive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub provenance: Provenance,
}

impl Section {
    fn new(
        title: &str,
        columns: &[&str],
        rows: Vec<Vec<String>>,
        provenance: Provenance,
    ) -> Section {
        Section {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
            provenance,
        }
    }
}

/// The full, deterministic result of one command invocation.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: Vec<(String, String)>,
    pub sections: Vec<Section>,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl RunReport {
    fn new(command: impl Into<String>, params: Vec<(&str, String)>) -> RunReport {
        RunReport {
            command: command.into(),
            params: params
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            sections: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.params {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        for section in &self.sections {
            out.push('\n');
            out.push_str(&format!("{} [{:?}]\n", section.title, section.provenance));
            let widths: Vec<usize> = section
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    section
                        .rows
                        .iter()
                        .map(|r| r[i].len())
                        .chain([c.len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let fmt_row = |cells: &[String]| -> String {
                let mut line = String::from(" ");
                for (i, cell) in cells.iter().enumerate() {
                    line.push_str(&format!(" {cell:width$}", width = widths[i]));
                }
                line.trim_end().to_string()
            };
            out.push_str(&fmt_row(&section.columns));
            out.push('\n');
            for row in &section.rows {
                out.push_str(&fmt_row(row));
                out.push('\n');
            }
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for note in &self.notes {
                out.push_str(&format!("note: {note}\n"));
            }
        }
        out
    }

    fn render_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialize");
        text.push('\n');
        text
    }

    /// CSV with one `# title` comment line per section, then a header row
    /// and the data rows.
    fn render_csv(&self) -> String {
        let escape = |cell: &str| -> String {
            if cell.contains([',', '"', '\n']) {
                format!("\"{}\"", cell.replace('"', "\"\""))
            } else {
                cell.to_string()
            }
        };
        let mut out = String::new();
        for section in &self.sections {
            out.push_str(&format!("# {}\n", section.title));
            out.push_str(
                &section
                    .columns
                    .iter()
                    .map(|c| escape(c))
                    .collect::<Vec<_>>()
                    .join(","),
            );
            out.push('\n');
            for row in &section.rows {
                out.push_str(&row.iter().map(|c| escape(c)).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
        }
        out
    }
}

fn rs(r: &Rational) -> String {
    rational_string(r)
}

fn matrix_rows(m: &Matrix) -> Vec<String> {
    (0..m.size())
        .map(|i| {
            let cells: Vec<String> = (0..m.size()).map(|j| m.at(i, j).to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// table1
// ---------------------------------------------------------------------------

/// The four-row table of product-observable distributions in the singlet
/// state. The values are the same for every prime power `q`.
pub fn cmd_table1(q: u64) -> Result<RunReport> {
    let field = crate::field::Field::prime_power(q)?;
    let gqm = Gqm::new(field)?;
    let mut report = RunReport::new("table1", vec![("q", q.to_string())]);
    let rows = gqm
        .singlet_product_table()
        .into_iter()
        .map(|row| match (row.distribution, row.expectation) {
            (Some(dist), Some(ev)) => {
                let mut cells = vec![row.pattern.to_string()];
                cells.extend(dist.iter().map(rs));
                cells.push(rs(&ev));
                cells
            }
            _ => {
                let mut cells = vec![row.pattern.to_string()];
                cells.extend(std::iter::repeat_n(
                    format!("absent (needs {} distinct indices)", row.indices_needed),
                    5,
                ));
                cells
            }
        })
        .collect();
    report.sections.push(Section::new(
        "singlet product-observable table",
        &["observable", "p(++)", "p(+-)", "p(-+)", "p(--)", "expectation"],
        rows,
        Provenance::Exact,
    ));
    report.notes.push(format!(
        "indices r,s,t,u are distinct labels of the {} standard states; values are index-independent",
        q + 1
    ));
    Ok(report)
}

// ---------------------------------------------------------------------------
// counts
// ---------------------------------------------------------------------------

/// Two-particle state census for the probability model.
pub fn cmd_counts_gqm(q: u64) -> Result<RunReport> {
    let field = crate::field::Field::prime_power(q)?;
    let gqm = Gqm::new(field)?;
    let census = gqm.classify_two_particle()?;
    let mut report = RunReport::new(
        "counts",
        vec![("model", "gqm".into()), ("q", q.to_string())],
    );
    report.sections.push(Section::new(
        "two-particle states",
        &["total", "product", "entangled"],
        vec![vec![
            census.total.to_string(),
            census.product.to_string(),
            census.entangled.to_string(),
        ]],
        Provenance::Exhaustive,
    ));
    report.notes.push(format!(
        "closed forms: total = q^3+q^2+q+1 = {}, product = (q+1)^2 = {}, entangled = q(q^2-1) = {}",
        q * q * q + q * q + q + 1,
        (q + 1) * (q + 1),
        q * (q * q - 1)
    ));
    Ok(report)
}

/// Physicality census for the biorthogonal model over `GF(p^2)`.
pub fn cmd_counts_bqm(p: u64) -> Result<RunReport> {
    let bqm = Bqm::new(p)?;
    let census = bqm.classify_states(4)?;
    let mut report = RunReport::new(
        "counts",
        vec![("model", "bqm".into()), ("p", p.to_string())],
    );
    report.sections.push(Section::new(
        "two-particle states",
        &[
            "total",
            "product",
            "entangled",
            "entangled physical",
            "entangled unphysical",
        ],
        vec![vec![
            census.total.to_string(),
            census.product.map_or_else(|| "-".into(), |v| v.to_string()),
            census.entangled.map_or_else(|| "-".into(), |v| v.to_string()),
            census
                .entangled_physical
                .map_or_else(|| "-".into(), |v| v.to_string()),
            census
                .entangled_unphysical
                .map_or_else(|| "-".into(), |v| v.to_string()),
        ]],
        Provenance::Exhaustive,
    ));
    report.notes.push(
        "a state is physical when its self dot product is nonzero, i.e. it has a conjugate dual"
            .into(),
    );
    Ok(report)
}

// ---------------------------------------------------------------------------
// chsh
// ---------------------------------------------------------------------------

/// Exhaustive CHSH bound for the probability model. For `q > 5` the search
/// restricts to the singlet, which loses nothing because one-sided
/// projective rotations act transitively on the entangled states.
pub fn cmd_chsh_gqm(q: u64, exhaustive: bool) -> Result<RunReport> {
    let field = crate::field::Field::prime_power(q)?;
    let gqm = Gqm::new(field)?;
    let scope = if exhaustive {
        if q > 5 {
            return Err(Error::SearchGuard(format!(
                "exhaustive state search is capped at q = 5, got q = {q}"
            )));
        }
        SearchScope::AllEntangled
    } else if q <= 5 {
        SearchScope::AllEntangled
    } else {
        SearchScope::SingletOnly
    };
    let result = gqm.chsh_max(scope)?;
    let mut report = RunReport::new(
        "chsh",
        vec![
            ("model", "gqm".into()),
            ("q", q.to_string()),
            (
                "scope",
                match scope {
                    SearchScope::AllEntangled => "all entangled states".into(),
                    SearchScope::SingletOnly => "singlet only".into(),
                },
            ),
        ],
    );
    report.sections.push(Section::new(
        "chsh maximum",
        &["max", "states searched", "settings per side", "maximizing combinations"],
        vec![vec![
            rs(&result.max),
            result.states_searched.to_string(),
            result.settings_per_side.to_string(),
            result.witness_count.to_string(),
        ]],
        Provenance::Exhaustive,
    ));
    if let Some(w) = &result.witness {
        report.sections.push(Section::new(
            "first maximizer",
            &["state", "a", "a'", "b", "b'"],
            vec![vec![
                w.state.rep().to_string(),
                format!("A({},{})", w.a.0, w.a.1),
                format!("A({},{})", w.a_prime.0, w.a_prime.1),
                format!("A({},{})", w.b.0, w.b.1),
                format!("A({},{})", w.b_prime.0, w.b_prime.1),
            ]],
            Provenance::Exhaustive,
        ));
    }
    if scope == SearchScope::SingletOnly {
        report.notes.push(
            "singlet-only search: every entangled state is a one-sided projective rotation of the singlet (verified exhaustively at small q)"
                .into(),
        );
    }
    Ok(report)
}

/// Exhaustive CHSH search for the biorthogonal model: all physical
/// two-particle states against all Pauli-analog setting quadruples.
pub fn cmd_chsh_bqm(p: u64) -> Result<RunReport> {
    let bqm = Bqm::new(p)?;
    let result = bqm.chsh_max()?;
    let mut report = RunReport::new(
        "chsh",
        vec![("model", "bqm".into()), ("p", p.to_string())],
    );
    report.sections.push(Section::new(
        "chsh maximum",
        &[
            "max",
            "physical states searched",
            "maximizing states",
            "maximizing combinations",
        ],
        vec![vec![
            result.max.to_string(),
            result.physical_states_searched.to_string(),
            result.witness_states.to_string(),
            result.witness_quadruples.to_string(),
        ]],
        Provenance::Exhaustive,
    ));
    if let Some(w) = &result.witness {
        report.sections.push(Section::new(
            "first maximizer",
            &["state", "a", "a'", "b", "b'"],
            vec![vec![
                w.state.rep().to_string(),
                w.a.clone(),
                w.a_prime.clone(),
                w.b.clone(),
                w.b_prime.clone(),
            ]],
            Provenance::Exhaustive,
        ));
    }
    report
        .notes
        .push("settings are the Pauli analogs sigma1, sigma2, sigma3 on each side".into());
    Ok(report)
}

// ---------------------------------------------------------------------------
// lhv
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LhvCheck {
    Feasibility,
    Signaling,
    Hardy,
    All,
}

/// Built-in tables reproducing the canonical inputs.
pub fn preset_table(name: &str) -> Result<BipartiteTable> {
    match name {
        "gqm-singlet-xy" => {
            let field = crate::field::Field::prime_power(3)?;
            Gqm::new(field)?.singlet_xy_table()
        }
        "pr-box" => Ok(BipartiteTable::pr_box()),
        "independent" => Ok(BipartiteTable::independent_coins()),
        other => Err(Error::Usage(format!(
            "unknown preset {other:?}; available: gqm-singlet-xy, pr-box, independent"
        ))),
    }
}

/// Correlation analysis of a bipartite table: correlators and CHSH always,
/// then the requested oracle verdicts.
pub fn cmd_lhv(table: &BipartiteTable, source: &str, check: LhvCheck) -> Result<RunReport> {
    let mut report = RunReport::new(
        "lhv",
        vec![
            ("source", source.to_string()),
            (
                "check",
                match check {
                    LhvCheck::Feasibility => "feasibility".into(),
                    LhvCheck::Signaling => "signaling".into(),
                    LhvCheck::Hardy => "hardy".into(),
                    LhvCheck::All => "all".into(),
                },
            ),
        ],
    );

    let mut correlator_rows = Vec::new();
    for (i, a) in table.settings_a().iter().enumerate() {
        for (j, b) in table.settings_b().iter().enumerate() {
            correlator_rows.push(vec![a.clone(), b.clone(), rs(&table.correlator(i, j))]);
        }
    }
    report.sections.push(Section::new(
        "correlators",
        &["a", "b", "E(a,b)"],
        correlator_rows,
        Provenance::Exact,
    ));
    report.sections.push(Section::new(
        "chsh",
        &["max over setting quadruples and sign placements"],
        vec![vec![rs(&chsh_table_max(table))]],
        Provenance::Exhaustive,
    ));

    if matches!(check, LhvCheck::Feasibility | LhvCheck::All) {
        let result = lhv_feasible(table)?;
        if result.feasible {
            let rows = result
                .weights
                .iter()
                .map(|(s, w)| vec![s.label(), rs(w)])
                .collect();
            report.sections.push(Section::new(
                "hidden-variable decomposition (feasible)",
                &["strategy", "weight"],
                rows,
                Provenance::Exhaustive,
            ));
        } else {
            let cert = result.certificate.expect("infeasible results carry a certificate");
            report.sections.push(Section::new(
                "hidden-variable feasibility: infeasible",
                &["strategy ceiling", "table value"],
                vec![vec![rs(&cert.strategy_ceiling), rs(&cert.table_value)]],
                Provenance::Exhaustive,
            ));
            report.notes.push(cert.description());
        }
    }

    if matches!(check, LhvCheck::Signaling | LhvCheck::All) {
        let ns = no_signaling_check(table);
        let rows = if ns.violations.is_empty() {
            vec![vec!["pass".to_string(), "-".to_string()]]
        } else {
            ns.violations
                .iter()
                .map(|v| vec!["fail".to_string(), v.description(table)])
                .collect()
        };
        report.sections.push(Section::new(
            "no-signaling marginals",
            &["verdict", "detail"],
            rows,
            Provenance::Exact,
        ));
    }

    if matches!(check, LhvCheck::Hardy | LhvCheck::All) {
        match hardy_chain_check(table) {
            Ok(chain) => {
                let mut rows = Vec::new();
                for branch in &chain.branches {
                    rows.push(vec!["assume".into(), branch.assumption.clone()]);
                    for step in &branch.steps {
                        rows.push(vec!["step".into(), step.clone()]);
                    }
                    if branch.contradiction {
                        rows.push(vec!["result".into(), "contradiction".into()]);
                    }
                }
                rows.push(vec![
                    "verdict".into(),
                    if chain.closes {
                        "chain closes: no deterministic completion exists".into()
                    } else {
                        "chain does not close: deterministic completions exist".into()
                    },
                ]);
                report.sections.push(Section::new(
                    "implication chain",
                    &["kind", "detail"],
                    rows,
                    Provenance::Exact,
                ));
                if !chain.excluded.is_empty() {
                    let rows = chain
                        .excluded
                        .iter()
                        .map(|e| {
                            vec![
                                table.settings_a()[e.a_setting].clone(),
                                table.settings_b()[e.b_setting].clone(),
                                format!(
                                    "{}{}",
                                    if e.outcome.0 > 0 { "+" } else { "-" },
                                    if e.outcome.1 > 0 { "+" } else { "-" }
                                ),
                                rs(&e.probability),
                            ]
                        })
                        .collect();
                    report.sections.push(Section::new(
                        "excluded outcomes (positive probability, no deterministic completion)",
                        &["a", "b", "outcome", "probability"],
                        rows,
                        Provenance::Exact,
                    ));
                }
            }
            Err(Error::NotTwoByTwo { a, b }) => {
                report.notes.push(format!(
                    "implication chain skipped: needs 2x2 settings, table is {a}x{b}"
                ));
            }
            Err(e) => return Err(e),
        }
    }

    Ok(report)
}

// ---------------------------------------------------------------------------
// bqm-detail
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BqmDetail {
    States,
    Systems,
    Pauli,
    UState,
    Constraints,
    Pu,
}

/// Catalogs of the biorthogonal model over `GF(p^2)`.
pub fn cmd_bqm_detail(p: u64, what: BqmDetail) -> Result<RunReport> {
    let bqm = Bqm::new(p)?;
    let what_name = match what {
        BqmDetail::States => "states",
        BqmDetail::Systems => "systems",
        BqmDetail::Pauli => "pauli",
        BqmDetail::UState => "u-state",
        BqmDetail::Constraints => "constraints",
        BqmDetail::Pu => "pu",
    };
    let mut report = RunReport::new(
        "bqm-detail",
        vec![("p", p.to_string()), ("what", what_name.into())],
    );

    match what {
        BqmDetail::States => {
            let census = bqm.classify_states(2)?;
            let rows = census
                .states
                .iter()
                .map(|s| {
                    let dual = bqm
                        .conjugate_dual(s.point().rep())
                        .map(|d| d.to_string())
                        .unwrap_or_else(|_| "none (self-orthogonal)".into());
                    vec![
                        s.point().index().to_string(),
                        s.point().rep().to_string(),
                        if s.is_physical() { "physical" } else { "unphysical" }.into(),
                        dual,
                    ]
                })
                .collect();
            report.sections.push(Section::new(
                "single-particle states",
                &["index", "state", "class", "conjugate dual"],
                rows,
                Provenance::Exhaustive,
            ));
            report.sections.push(Section::new(
                "census",
                &["total", "physical", "unphysical"],
                vec![vec![
                    census.total.to_string(),
                    census.physical.to_string(),
                    census.unphysical.to_string(),
                ]],
                Provenance::Exhaustive,
            ));
        }
        BqmDetail::Systems => {
            let systems = bqm.biorthogonal_systems()?;
            let rows = systems
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    vec![
                        k.to_string(),
                        s.kets()[0].rep().to_string(),
                        s.kets()[1].rep().to_string(),
                        s.bras()[0].to_string(),
                        s.bras()[1].to_string(),
                    ]
                })
                .collect();
            report.sections.push(Section::new(
                "biorthogonal systems",
                &["system", "ket 1", "ket 2", "bra 1", "bra 2"],
                rows,
                Provenance::Exhaustive,
            ));
            report
                .notes
                .push("each bra-ket pairing matrix is exactly the identity".into());
        }
        BqmDetail::Pauli => {
            let paulis = bqm.standard_paulis();
            let rows = paulis
                .iter()
                .map(|op| {
                    vec![
                        op.label().to_string(),
                        matrix_rows(op.matrix()).join(" "),
                        op.system().kets()[0].rep().to_string(),
                        op.system().kets()[1].rep().to_string(),
                    ]
                })
                .collect();
            report.sections.push(Section::new(
                "pauli analogs (eigenvalues +1, -1)",
                &["operator", "matrix", "+1 eigenket", "-1 eigenket"],
                rows,
                Provenance::Exact,
            ));
        }
        BqmDetail::UState => {
            let u = bqm.u_state();
            let dual = bqm.conjugate_dual(&u)?;
            report.sections.push(Section::new(
                "state",
                &["|U>", "<U|"],
                vec![vec![u.to_string(), dual.to_string()]],
                Provenance::Exact,
            ));
            let (correlators, chsh) = u_state_correlators(&bqm, &u)?;
            report.sections.push(Section::new(
                "correlators",
                &["setting pair", "expectation"],
                correlators,
                Provenance::Exact,
            ));
            report.sections.push(Section::new(
                "chsh",
                &["a", "a'", "b", "b'", "value"],
                vec![vec![
                    "sigma1".into(),
                    "sigma3".into(),
                    "sigma3".into(),
                    "sigma1".into(),
                    chsh.to_string(),
                ]],
                Provenance::Exact,
            ));
        }
        BqmDetail::Constraints => {
            let u = bqm.u_state();
            let [sigma1, _, sigma3] = bqm.standard_paulis();
            let settings = [sigma1, sigma3];
            let mut rows = Vec::new();
            for (label_a, label_b, c) in bqm.bipartite_constraints(&u, &settings, &settings)? {
                let forced = if c.forced.is_empty() {
                    "-".to_string()
                } else {
                    c.forced
                        .iter()
                        .map(|((s, t), v)| {
                            format!(
                                "P({}{}) = {}",
                                if *s > 0 { "+" } else { "-" },
                                if *t > 0 { "+" } else { "-" },
                                rs(v)
                            )
                        })
                        .collect::<Vec<_>>()
                        .join("; ")
                };
                let relations = c
                    .relations
                    .iter()
                    .map(|(outcomes, total)| {
                        let terms = outcomes
                            .iter()
                            .map(|(s, t)| {
                                format!(
                                    "P({}{})",
                                    if *s > 0 { "+" } else { "-" },
                                    if *t > 0 { "+" } else { "-" }
                                )
                            })
                            .collect::<Vec<_>>()
                            .join(" + ");
                        format!("{} = {}", terms, rs(total))
                    })
                    .collect::<Vec<_>>()
                    .join("; ");
                rows.push(vec![
                    format!("{label_a} (x) {label_b}"),
                    c.expectation.to_string(),
                    forced,
                    relations,
                    c.degrees_of_freedom.to_string(),
                ]);
            }
            report.sections.push(Section::new(
                "outcome probability constraints on |U>",
                &["setting pair", "expectation", "forced", "relations", "free parameters"],
                rows,
                Provenance::Exact,
            ));
            report.notes.push(
                "the model fixes expectation values but leaves the split of each outcome-pair sum undetermined"
                    .into(),
            );
        }
        BqmDetail::Pu => {
            let pu = bqm.enumerate_pu()?;
            report.sections.push(Section::new(
                "projective unitary group",
                &["order"],
                vec![vec![pu.len().to_string()]],
                Provenance::Exhaustive,
            ));
            let rows = pu
                .iter()
                .enumerate()
                .map(|(k, m)| vec![k.to_string(), matrix_rows(m).join(" ")])
                .collect();
            report.sections.push(Section::new(
                "elements (canonical representatives)",
                &["index", "matrix"],
                rows,
                Provenance::Exhaustive,
            ));
            report.notes.push(
                "a subgroup of the projective linear group; every element maps biorthogonal systems to biorthogonal systems"
                    .into(),
            );
        }
    }
    Ok(report)
}

fn u_state_correlators(bqm: &Bqm, u: &crate::linalg::Vector) -> Result<(Vec<Vec<String>>, i64)> {
    let [sigma1, _, sigma3] = bqm.standard_paulis();
    let pairs: [(&HermitianAnalog, &HermitianAnalog); 4] = [
        (&sigma1, &sigma1),
        (&sigma1, &sigma3),
        (&sigma3, &sigma3),
        (&sigma3, &sigma1),
    ];
    let mut rows = Vec::new();
    for (a, b) in pairs {
        let ev = bqm.expectation(&a.matrix().kronecker(b.matrix()), u)?;
        rows.push(vec![
            format!("{} (x) {}", a.label(), b.label()),
            ev.value.to_string(),
        ]);
    }
    let chsh = bqm.chsh(
        u,
        sigma1.matrix(),
        sigma3.matrix(),
        sigma3.matrix(),
        sigma1.matrix(),
    )?;
    Ok((rows, chsh))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_are_deterministic() {
        let a = cmd_table1(5).unwrap().render(Format::Text);
        let b = cmd_table1(5).unwrap().render(Format::Text);
        assert_eq!(a, b);
        let a = cmd_bqm_detail(3, BqmDetail::Systems).unwrap().render(Format::Json);
        let b = cmd_bqm_detail(3, BqmDetail::Systems).unwrap().render(Format::Json);
        assert_eq!(a, b);
    }

    #[test]
    fn table1_reports_exact_fractions() {
        let text = cmd_table1(5).unwrap().render(Format::Text);
        assert!(text.contains("1/3"), "{text}");
        assert!(text.contains("-1/3"), "{text}");
        assert!(!text.contains("0.33"), "{text}");
    }

    #[test]
    fn table1_marks_absent_rows() {
        let text = cmd_table1(2).unwrap().render(Format::Text);
        assert!(text.contains("absent"), "{text}");
        let text3 = cmd_table1(3).unwrap().render(Format::Text);
        assert!(!text3.contains("absent"), "{text3}");
    }

    #[test]
    fn csv_and_json_encode_the_same_rows() {
        let report = cmd_counts_bqm(3).unwrap();
        let csv = report.render(Format::Csv);
        let json: serde_json::Value =
            serde_json::from_str(&report.render(Format::Json)).unwrap();
        // every data cell in the JSON sections appears in the CSV
        for section in json["sections"].as_array().unwrap() {
            for row in section["rows"].as_array().unwrap() {
                for cell in row.as_array().unwrap() {
                    let cell = cell.as_str().unwrap();
                    assert!(csv.contains(cell), "cell {cell:?} missing from CSV:\n{csv}");
                }
            }
        }
    }

    #[test]
    fn counts_reports() {
        let text = cmd_counts_gqm(9).unwrap().render(Format::Text);
        assert!(text.contains("820"), "{text}");
        assert!(text.contains("720"), "{text}");
        let text = cmd_counts_bqm(3).unwrap().render(Format::Text);
        assert!(text.contains("504"), "{text}");
        assert!(text.contains("216"), "{text}");
    }

    #[test]
    fn chsh_reports() {
        let text = cmd_chsh_gqm(3, true).unwrap().render(Format::Text);
        assert!(text.contains("2/1"), "{text}");
        let singlet_only = cmd_chsh_gqm(7, false).unwrap().render(Format::Text);
        assert!(singlet_only.contains("singlet"), "{singlet_only}");
        let guard = cmd_chsh_gqm(7, true);
        assert!(matches!(guard, Err(Error::SearchGuard(_))));
        let text = cmd_chsh_bqm(3).unwrap().render(Format::Text);
        assert!(text.contains('4'), "{text}");
    }

    #[test]
    fn lhv_preset_reports() {
        let table = preset_table("gqm-singlet-xy").unwrap();
        let text = cmd_lhv(&table, "preset:gqm-singlet-xy", LhvCheck::All)
            .unwrap()
            .render(Format::Text);
        assert!(text.contains("infeasible"), "{text}");
        assert!(text.contains("chain closes"), "{text}");
        assert!(text.contains("1/3"), "{text}");

        let pr = preset_table("pr-box").unwrap();
        let text = cmd_lhv(&pr, "preset:pr-box", LhvCheck::All)
            .unwrap()
            .render(Format::Text);
        assert!(text.contains("4/1"), "{text}");
        assert!(text.contains("infeasible"), "{text}");

        let ind = preset_table("independent").unwrap();
        let text = cmd_lhv(&ind, "preset:independent", LhvCheck::Feasibility)
            .unwrap()
            .render(Format::Text);
        assert!(text.contains("feasible"), "{text}");
        assert!(text.contains("1/4"), "{text}");

        assert!(matches!(preset_table("nope"), Err(Error::Usage(_))));
    }

    #[test]
    fn bqm_detail_reports() {
        let text = cmd_bqm_detail(3, BqmDetail::States).unwrap().render(Format::Text);
        assert!(text.contains("unphysical"), "{text}");
        let text = cmd_bqm_detail(3, BqmDetail::Systems).unwrap().render(Format::Text);
        assert!(text.contains("(1, i)"), "{text}");
        let text = cmd_bqm_detail(3, BqmDetail::UState).unwrap().render(Format::Text);
        assert!(text.contains("(1, 0, 1, 1+i)"), "{text}");
        let text = cmd_bqm_detail(3, BqmDetail::Constraints)
            .unwrap()
            .render(Format::Text);
        assert!(text.contains("P(+-) + P(-+) = 1/1"), "{text}");
        let text = cmd_bqm_detail(3, BqmDetail::Pu).unwrap().render(Format::Text);
        assert!(text.contains("24"), "{text}");
    }
}
