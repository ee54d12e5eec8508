//! Analysis orchestration: one graph, or a whole family scan.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use dgrover_core::dihedral::is_normal;
use dgrover_core::pst::{classify_pst, default_tau_max, pst_brute_force, PstCertificate};
use dgrover_core::spectrum::full_spectrum;
use dgrover_core::walk::{component_count, is_bipartite, period};

use crate::family::Family;
use crate::parse::SetExpression;
use crate::report::{AnalysisReport, PstSummary, SpectrumEntry};
use crate::CliError;

/// Knobs shared by `analyze` and `scan`.
#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions {
    /// Also run the brute-force oracle and fail hard on any disagreement.
    pub verify: bool,
    /// Scan horizon; defaults to `8n`.
    pub tau_max: Option<u64>,
    /// Entry tolerance for the brute-force scan.
    pub tol: f64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            verify: false,
            tau_max: None,
            tol: dgrover_core::ZERO_TOL,
        }
    }
}

/// Run the full pipeline on one validated connection set.
pub fn analyze(expr: &SetExpression, opts: &AnalyzeOptions) -> Result<AnalysisReport, CliError> {
    let conn = expr.connection();
    let n = conn.n();
    let tau_max = opts.tau_max.unwrap_or_else(|| default_tau_max(n));

    let normal = is_normal(conn)?.normal;
    let items = full_spectrum(conn);
    let components = component_count(conn);
    let bipartite = is_bipartite(conn);

    let classifier = classify_pst(conn, tau_max)?;
    if opts.verify {
        let brute = pst_brute_force(conn, tau_max, opts.tol)?;
        check_agreement(&classifier, &brute)?;
    }

    let sigma = period(
        &items,
        n * conn.degree(),
        conn.vertex_count(),
        components,
        bipartite,
        4 * n as u64 * conn.degree() as u64,
    );

    Ok(AnalysisReport {
        n,
        set: expr.text().to_string(),
        degree: conn.degree(),
        normal,
        connected: components == 1,
        bipartite,
        spectrum: items.iter().map(SpectrumEntry::from_item).collect(),
        period: sigma,
        pst: PstSummary::from_certificate(&classifier),
    })
}

fn check_agreement(classifier: &PstCertificate, brute: &PstCertificate) -> Result<(), CliError> {
    if classifier.occurs == brute.occurs
        && classifier.min_time == brute.min_time
        && classifier.pairs == brute.pairs
    {
        return Ok(());
    }
    Err(CliError::OracleDisagreement(format!(
        "classifier says occurs={} time={:?} pairs={:?}; brute force says occurs={} time={:?} pairs={:?}",
        classifier.occurs,
        classifier.min_time,
        classifier.pairs,
        brute.occurs,
        brute.min_time,
        brute.pairs
    )))
}

/// One line of a family scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub param: i64,
    pub report: AnalysisReport,
}

/// Analyze every instance of a family for `param` in `from..=to`.
///
/// Instances run on up to `jobs` worker threads; rows come back ordered by
/// parameter regardless of completion order.
pub fn scan_family(
    family: Family,
    from: i64,
    to: i64,
    jobs: usize,
    opts: &AnalyzeOptions,
) -> Result<Vec<ScanRow>, CliError> {
    if from > to {
        return Err(CliError::Usage(format!(
            "empty parameter range: --from {from} --to {to}"
        )));
    }
    let mut instances = Vec::new();
    for param in from..=to {
        if let Some((_, expr)) = family.instantiate(param)? {
            instances.push((param, expr));
        }
    }

    let jobs = jobs.clamp(1, instances.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<ScanRow, CliError>>>> =
        instances.iter().map(|_| Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((param, expr)) = instances.get(i) else {
                    break;
                };
                let result = analyze(expr, opts).map(|report| ScanRow {
                    param: *param,
                    report,
                });
                *slots[i].lock().unwrap() = Some(result);
            });
        }
    });

    slots
        .into_iter()
        .map(|slot| {
            slot.into_inner()
                .unwrap()
                .expect("worker filled every slot")
        })
        .collect()
}

/// Render scan rows as an aligned text table.
pub fn scan_table(rows: &[ScanRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:>6} {:>4} {:>6} {:>7} {:>7} {:>9} {:>8} {:>9}  {}\n",
        "param", "n", "degree", "normal", "period", "pst", "min_time", "case", "set"
    ));
    for row in rows {
        let r = &row.report;
        out.push_str(&format!(
            "{:>6} {:>4} {:>6} {:>7} {:>7} {:>9} {:>8} {:>9}  {{{}}}\n",
            row.param,
            r.n,
            r.degree,
            if r.normal { "yes" } else { "no" },
            r.period.map_or("-".to_string(), |p| p.to_string()),
            if r.pst.occurs { "occurs" } else { "none" },
            r.pst.min_time.map_or("-".to_string(), |t| t.to_string()),
            r.pst.theorem_case,
            r.set
        ));
    }
    out
}

/// Scan rows as a JSON array (stable field order, trailing newline).
pub fn scan_json(rows: &[ScanRow]) -> String {
    let mut out = serde_json::to_string_pretty(rows).expect("rows serialize");
    out.push('\n');
    out
}
