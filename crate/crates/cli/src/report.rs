//! Analysis reports with a stable JSON schema.
//!
//! Top-level JSON object:
//!
//! ```json
//! {"n": 3, "set": "b, b*a^1", "degree": 2, "normal": false,
//!  "connected": true, "bipartite": true,
//!  "spectrum": [{"label": "psi1", "value": 2, "multiplicity": 1}, ...],
//!  "period": 6,
//!  "pst": {"occurs": true, "pairs": [[0, 5], [1, 3], [2, 4]],
//!          "min_time": 3, "theorem_case": "B"}}
//! ```
//!
//! Fields appear in declaration order and floats are normalized at
//! construction (integers within 1e-9 are snapped and emitted as JSON
//! integers; everything else is rounded to 12 significant digits), so
//! identical inputs always produce byte-identical output.

use serde::{Deserialize, Serialize, Serializer};

use dgrover_core::pst::PstCertificate;
use dgrover_core::spectrum::EigenItem;

/// One spectrum line: adjacency eigenvalue with its component label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub label: String,
    #[serde(serialize_with = "serialize_value")]
    pub value: f64,
    pub multiplicity: usize,
}

impl SpectrumEntry {
    pub fn from_item(item: &EigenItem) -> Self {
        SpectrumEntry {
            label: item.label.name(),
            value: normalize_value(item.adjacency_eigenvalue),
            multiplicity: item.multiplicity,
        }
    }
}

/// The PST block of a report (a projection of [`PstCertificate`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PstSummary {
    pub occurs: bool,
    pub pairs: Vec<(usize, usize)>,
    pub min_time: Option<u64>,
    pub theorem_case: String,
}

impl PstSummary {
    pub fn from_certificate(cert: &PstCertificate) -> Self {
        PstSummary {
            occurs: cert.occurs,
            pairs: cert.pairs.clone(),
            min_time: cert.min_time,
            theorem_case: cert.theorem_case.name().to_string(),
        }
    }
}

/// The complete analysis of one Cayley graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub set: String,
    pub degree: usize,
    pub normal: bool,
    pub connected: bool,
    pub bipartite: bool,
    pub spectrum: Vec<SpectrumEntry>,
    pub period: Option<u64>,
    pub pst: PstSummary,
}

/// Snap near-integers, otherwise keep 12 significant digits.
pub fn normalize_value(v: f64) -> f64 {
    if (v - v.round()).abs() <= 1e-9 {
        return v.round();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let factor = 10f64.powi(11 - magnitude);
    (v * factor).round() / factor
}

fn serialize_value<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.fract() == 0.0 && v.abs() < 9.0e15 {
        s.serialize_i64(*v as i64)
    } else {
        s.serialize_f64(*v)
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("Cay(D_{}, S) with S = {{{}}}\n", self.n, self.set));
        out.push_str(&format!(
            "degree {}   normal: {}   connected: {}   bipartite: {}\n",
            self.degree,
            yes_no(self.normal),
            yes_no(self.connected),
            yes_no(self.bipartite)
        ));
        out.push_str("spectrum (label, adjacency eigenvalue, multiplicity):\n");
        for e in &self.spectrum {
            out.push_str(&format!(
                "  {:<8} {:>18} {:>4}\n",
                e.label,
                format_value(e.value),
                e.multiplicity
            ));
        }
        match self.period {
            Some(p) => out.push_str(&format!("period: {p}\n")),
            None => out.push_str("period: not detected\n"),
        }
        if self.pst.occurs {
            let pairs = self
                .pst
                .pairs
                .iter()
                .map(|(u, v)| format!("({u},{v})"))
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&format!(
                "pst: occurs at minimum time {} [case {}] between {pairs}\n",
                self.pst.min_time.unwrap_or(0),
                self.pst.theorem_case
            ));
        } else {
            out.push_str(&format!("pst: none [case {}]\n", self.pst.theorem_case));
        }
        out
    }
}

pub fn format_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 9.0e15 {
        format!("{}", v as i64)
    } else {
        format!("{v:.12}")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_normalize_to_integers_or_12_digits() {
        assert_eq!(normalize_value(3.0000000004), 3.0);
        assert_eq!(normalize_value(-2.0), -2.0);
        let rounded = normalize_value(0.618_033_988_749_894_9);
        assert_eq!(rounded, 0.618033988750);
        assert_eq!(normalize_value(1234.56789012345), 1234.56789012);
    }

    #[test]
    fn integer_values_serialize_without_fraction() {
        let entry = SpectrumEntry {
            label: "psi1".into(),
            value: 4.0,
            multiplicity: 1,
        };
        let json = serde_json::to_string(&entry).unwrap();
        assert_eq!(json, r#"{"label":"psi1","value":4,"multiplicity":1}"#);
    }

    #[test]
    fn report_round_trips_through_json() {
        let report = AnalysisReport {
            n: 3,
            set: "b, b*a^1".into(),
            degree: 2,
            normal: false,
            connected: true,
            bipartite: true,
            spectrum: vec![SpectrumEntry {
                label: "rho1+".into(),
                value: normalize_value(0.5000000000001),
                multiplicity: 2,
            }],
            period: Some(6),
            pst: PstSummary {
                occurs: true,
                pairs: vec![(0, 5)],
                min_time: Some(3),
                theorem_case: "B".into(),
            },
        };
        let json = report.to_json();
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        // byte-identical on re-serialization
        assert_eq!(back.to_json(), json);
    }
}
