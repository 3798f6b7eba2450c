//! JSON certificates for every kind of finding, and a verifier that needs
//! nothing but the certificate and the coloring it refers to.

use serde::{Deserialize, Serialize};

use crate::arithmetic::{check_g_property, difference_set, RealSet, RealSetFile};
use crate::budget::{binomial, Budget};
use crate::coloring::{check_local_property_with, CheckMode, ColorLabel, ColoringFile, EdgeColoring, PropertyVerdict};
use crate::error::{Error, Result};
use crate::forbidden::{CliqueWitness, CompleteBipartite, Subdivision, WitnessSet};
use crate::oracle::{exact_f_with, exact_g_integers_with, OracleResult};

/// Two base edges with the same color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEquality {
    pub left: (usize, usize),
    pub right: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Certificate {
    /// A k-set spanning fewer than `l` colors.
    Violation {
        k: usize,
        l: usize,
        vertices: Vec<usize>,
        colors: usize,
    },
    /// A k-set spanning at most `C(k, 2) − repetitions` colors.
    WitnessSet {
        k: usize,
        vertices: Vec<usize>,
        repetitions: usize,
        equalities: Vec<PairEquality>,
    },
    /// The base elements of a telescoped cycle and its listed equalities.
    Clique {
        vertices: Vec<usize>,
        repetitions: usize,
        equalities: Vec<PairEquality>,
    },
    #[serde(rename = "k-st")]
    KSt {
        color: ColorLabel,
        side_s: Vec<usize>,
        side_t: Vec<usize>,
    },
    Subdivision {
        color: ColorLabel,
        branch: Vec<usize>,
        midpoints: Vec<(usize, usize, usize)>,
    },
    OracleF {
        n: usize,
        k: usize,
        l: usize,
        value: usize,
        witness: ColoringFile,
    },
    OracleG {
        n: usize,
        k: usize,
        l: usize,
        max_value: u64,
        value: usize,
        witness: RealSetFile,
    },
}

/// For each color inside S, ties every later edge of that color to the
/// first one; the list length is `C(|S|, 2) − colors(S)`.
fn spanning_equalities(g: &EdgeColoring, vertices: &[usize]) -> Vec<PairEquality> {
    let mut first: Vec<Option<(usize, usize)>> = vec![None; g.palette_size()];
    let mut out = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            let edge = (u.min(v), u.max(v));
            match first[g.color(u, v).index()] {
                None => first[g.color(u, v).index()] = Some(edge),
                Some(e) => out.push(PairEquality { left: e, right: edge }),
            }
        }
    }
    out
}

impl Certificate {
    /// `None` when the verdict holds.
    pub fn from_verdict(g: &EdgeColoring, k: usize, l: usize, verdict: &PropertyVerdict) -> Option<Certificate> {
        if verdict.holds {
            return None;
        }
        let vertices = verdict.witness.clone()?;
        Some(Certificate::Violation {
            k,
            l,
            colors: g.colors_spanned(&vertices),
            vertices,
        })
    }

    pub fn from_witness(g: &EdgeColoring, w: &WitnessSet) -> Certificate {
        Certificate::WitnessSet {
            k: w.target_k,
            vertices: w.vertices.clone(),
            repetitions: w.claimed_repetitions,
            equalities: spanning_equalities(g, &w.vertices),
        }
    }

    pub fn from_clique(w: &CliqueWitness) -> Certificate {
        Certificate::Clique {
            vertices: w.base_vertices.clone(),
            repetitions: w.repetitions,
            equalities: w
                .equalities
                .iter()
                .map(|e| PairEquality {
                    left: e.left,
                    right: e.right,
                })
                .collect(),
        }
    }

    pub fn from_complete_bipartite(color: ColorLabel, b: &CompleteBipartite) -> Certificate {
        Certificate::KSt {
            color,
            side_s: b.side_s.clone(),
            side_t: b.side_t.clone(),
        }
    }

    pub fn from_subdivision(color: ColorLabel, h: &Subdivision) -> Certificate {
        Certificate::Subdivision {
            color,
            branch: h.branch.clone(),
            midpoints: h.midpoints.clone(),
        }
    }

    pub fn from_oracle_f(k: usize, l: usize, res: &OracleResult<EdgeColoring>) -> Certificate {
        Certificate::OracleF {
            n: res.witness.n(),
            k,
            l,
            value: res.value,
            witness: res.witness.to_file(),
        }
    }

    pub fn from_oracle_g(k: usize, l: usize, max_value: u64, res: &OracleResult<RealSet>) -> Certificate {
        Certificate::OracleG {
            n: res.witness.len(),
            k,
            l,
            max_value,
            value: res.value,
            witness: res.witness.to_file(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Violation { .. } => "violation",
            Certificate::WitnessSet { .. } => "witness-set",
            Certificate::Clique { .. } => "clique",
            Certificate::KSt { .. } => "k-st",
            Certificate::Subdivision { .. } => "subdivision",
            Certificate::OracleF { .. } => "oracle-f",
            Certificate::OracleG { .. } => "oracle-g",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(text)?)
    }

    /// Whether this kind is checked against a coloring file.
    pub fn needs_coloring(&self) -> bool {
        !matches!(self, Certificate::OracleF { .. } | Certificate::OracleG { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub kind: &'static str,
    pub detail: String,
}

fn reject(msg: impl Into<String>) -> Error {
    Error::WitnessRejected(msg.into())
}

fn distinct_in_range(vertices: &[usize], n: usize) -> Result<()> {
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(reject(format!("vertex {} is listed twice", w[0])));
    }
    if let Some(&v) = sorted.last().filter(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok(())
}

fn check_equalities(g: &EdgeColoring, vertices: &[usize], equalities: &[PairEquality]) -> Result<()> {
    let inside = |(a, b): (usize, usize)| a != b && vertices.contains(&a) && vertices.contains(&b);
    for e in equalities {
        if !inside(e.left) || !inside(e.right) {
            return Err(reject(format!("equality {e:?} leaves the vertex set")));
        }
        if e.left == e.right || (e.left.1, e.left.0) == e.right {
            return Err(reject(format!("equality {e:?} compares an edge with itself")));
        }
        if g.color(e.left.0, e.left.1) != g.color(e.right.0, e.right.1) {
            return Err(reject(format!("equality {e:?} does not hold")));
        }
    }
    Ok(())
}

fn label_color(g: &EdgeColoring, label: &ColorLabel) -> Result<crate::coloring::ColorId> {
    g.color_by_label(label)
        .ok_or_else(|| reject(format!("color {label} does not occur in the coloring")))
}

/// Re-checks a certificate. Oracle certificates re-run the search.
pub fn verify(cert: &Certificate, coloring: Option<&EdgeColoring>, budget: &Budget) -> Result<VerifyReport> {
    let need = || {
        coloring.ok_or_else(|| Error::invalid(format!("a {} certificate is checked against a coloring", cert.kind())))
    };
    let detail = match cert {
        Certificate::Violation { k, l, vertices, colors } => {
            let g = need()?;
            distinct_in_range(vertices, g.n())?;
            if vertices.len() != *k {
                return Err(reject(format!("{} vertices listed, expected {k}", vertices.len())));
            }
            let actual = g.colors_spanned(vertices);
            if actual != *colors {
                return Err(reject(format!("the set spans {actual} colors, not {colors}")));
            }
            if actual >= *l {
                return Err(reject(format!("the set spans {actual} ≥ l = {l} colors")));
            }
            format!("{k} vertices span {actual} < {l} colors")
        }
        Certificate::WitnessSet {
            k,
            vertices,
            repetitions,
            equalities,
        } => {
            let g = need()?;
            distinct_in_range(vertices, g.n())?;
            if vertices.len() != *k {
                return Err(reject(format!("{} vertices listed, expected {k}", vertices.len())));
            }
            check_equalities(g, vertices, equalities)?;
            let pairs = binomial(*k as u64, 2) as usize;
            let actual = g.colors_spanned(vertices);
            if actual + repetitions > pairs {
                return Err(reject(format!(
                    "the set spans {actual} colors, more than C({k},2) − {repetitions}"
                )));
            }
            format!("{k} vertices span {actual} ≤ {} colors", pairs - repetitions)
        }
        Certificate::Clique {
            vertices,
            repetitions,
            equalities,
        } => {
            let g = need()?;
            distinct_in_range(vertices, g.n())?;
            check_equalities(g, vertices, equalities)?;
            if equalities.len() != *repetitions {
                return Err(reject(format!("{} equalities listed, {repetitions} claimed", equalities.len())));
            }
            let deficiency = binomial(vertices.len() as u64, 2) as usize - g.colors_spanned(vertices);
            format!(
                "{} distinct base elements, {repetitions} equalities hold, deficiency {deficiency}",
                vertices.len()
            )
        }
        Certificate::KSt { color, side_s, side_t } => {
            let g = need()?;
            let c = label_color(g, color)?;
            let all: Vec<usize> = side_s.iter().chain(side_t).copied().collect();
            distinct_in_range(&all, g.n())?;
            if side_s.is_empty() || side_s.len() > side_t.len() {
                return Err(reject("sides must satisfy 1 ≤ s ≤ t"));
            }
            for &u in side_s {
                for &v in side_t {
                    if g.color(u, v) != c {
                        return Err(reject(format!("pair {u} – {v} is not colored {color}")));
                    }
                }
            }
            format!("K_{{{},{}}} in color {color}", side_s.len(), side_t.len())
        }
        Certificate::Subdivision {
            color,
            branch,
            midpoints,
        } => {
            let g = need()?;
            let c = label_color(g, color)?;
            let h = Subdivision {
                branch: branch.clone(),
                midpoints: midpoints.clone(),
            };
            h.verify(g, c)?;
            format!("H_{} in color {color}", branch.len())
        }
        Certificate::OracleF { n, k, l, value, witness } => {
            let w = EdgeColoring::from_file(witness.clone())?;
            if w.n() != *n {
                return Err(reject(format!("witness has {} vertices, expected {n}", w.n())));
            }
            if w.palette_size() != *value {
                return Err(reject(format!("witness uses {} colors, claimed {value}", w.palette_size())));
            }
            if !check_local_property_with(&w, *k, *l, CheckMode::Exhaustive, budget)?.holds {
                return Err(reject("witness violates the local property"));
            }
            let recomputed = exact_f_with(*n, *k, *l, budget)?.value;
            if recomputed != *value {
                return Err(reject(format!("exhaustive search gives {recomputed}, not {value}")));
            }
            format!("f({n},{k},{l}) = {value}, witness valid, optimality re-searched")
        }
        Certificate::OracleG {
            n,
            k,
            l,
            max_value,
            value,
            witness,
        } => {
            let set = RealSet::from_file(witness)?;
            if set.len() != *n || set.denominator() != 1 {
                return Err(reject(format!("witness must be {n} integers")));
            }
            let (lo, hi) = (set.numerator(0), set.numerator(set.len() - 1));
            if lo != 0 || hi > *max_value as i128 {
                return Err(reject(format!("witness leaves {{0, …, {max_value}}} or omits 0")));
            }
            let size = difference_set(&set)?.len();
            if size != *value {
                return Err(reject(format!("|A − A| = {size}, claimed {value}")));
            }
            if !check_g_property(&set, *k, *l)?.holds {
                return Err(reject("witness violates the difference property"));
            }
            let recomputed = exact_g_integers_with(*n, *k, *l, *max_value, budget)?.value;
            if recomputed != *value {
                return Err(reject(format!("exhaustive search gives {recomputed}, not {value}")));
            }
            format!("g({n},{k},{l}) = {value} over {{0, …, {max_value}}}, optimality re-searched")
        }
    };
    Ok(VerifyReport {
        kind: cert.kind(),
        detail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::check_local_property;
    use crate::oracle::{exact_f, exact_g_integers};

    fn roundtrip(c: &Certificate) -> Certificate {
        Certificate::from_json(&c.to_json()).unwrap()
    }

    #[test]
    fn violation_roundtrip() {
        let g = EdgeColoring::monochromatic(4).unwrap();
        let v = check_local_property(&g, 3, 2, CheckMode::Exhaustive).unwrap();
        let cert = Certificate::from_verdict(&g, 3, 2, &v).unwrap();
        assert!(cert.to_json().contains("\"type\": \"violation\""));
        verify(&roundtrip(&cert), Some(&g), &Budget::default()).unwrap();
        let rainbow = EdgeColoring::rainbow(4).unwrap();
        assert!(verify(&cert, Some(&rainbow), &Budget::default()).is_err());
        assert!(verify(&cert, None, &Budget::default()).is_err());
    }

    #[test]
    fn oracle_certificates() {
        let res = exact_f(4, 3, 2).unwrap();
        let cert = Certificate::from_oracle_f(3, 2, &res);
        verify(&roundtrip(&cert), None, &Budget::default()).unwrap();
        let Certificate::OracleF { n, k, l, witness, .. } = cert else { unreachable!() };
        let forged = Certificate::OracleF { n, k, l, value: 3, witness };
        assert!(verify(&forged, None, &Budget::default()).is_err());

        let res = exact_g_integers(3, 3, 2, 4).unwrap();
        let cert = Certificate::from_oracle_g(3, 2, 4, &res);
        verify(&roundtrip(&cert), None, &Budget::default()).unwrap();
    }

    #[test]
    fn tampered_witness_set_fails() {
        let g = EdgeColoring::rainbow(8).unwrap();
        let cert = Certificate::WitnessSet {
            k: 8,
            vertices: (0..8).collect(),
            repetitions: 4,
            equalities: vec![],
        };
        assert!(verify(&cert, Some(&g), &Budget::default()).is_err());
        let bad_eq = Certificate::WitnessSet {
            k: 2,
            vertices: vec![0, 1],
            repetitions: 0,
            equalities: vec![PairEquality {
                left: (0, 1),
                right: (1, 0),
            }],
        };
        assert!(verify(&bad_eq, Some(&g), &Budget::default()).is_err());
    }
}
