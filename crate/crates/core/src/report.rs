//! Per-graph comparison of the exact count against every applicable bound,
//! with JSON and CSV emission.

use std::fmt::Display;
use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bounds::{
    bregman_bound, cubic_no4_bound, fullerene_hamiltonian_bounds, girth_bound, hadamard_bound,
    hadamard_fourth_power, hf_block_bound, hf_square_bound, hf_square_fourth_power, is_tight,
    pentacap_lower_bound, ring_refined_bound, semicircular_cubic_bound,
};
use crate::circular::{detect_semicircular, CircularDecomposition};
use crate::corpus::CorpusEntry;
use crate::embedding::EdgeBound;
use crate::error::{Error, Result};
use crate::fullerene::validate_fullerene;
use crate::graph::{has_short_cycles, square_graph};
use crate::linalg::log2_big;
use crate::matching::{enumerate_perfect_matchings, greedy_maximal_matching, DEFAULT_ORACLE_LIMIT};
use crate::pfaffian::{count_by_pfaffian, count_with_orientation, gram_matrix, kasteleyn_orient, GramMatrix};

pub(crate) fn ser_rational<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn ser_display<T: Display, S: Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub(crate) fn ser_display_vec<T: Display, S: Serializer>(
    xs: &[T],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(ToString::to_string))
}

pub(crate) fn ser_biguint_vec<S: Serializer>(xs: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_display_vec(xs, s)
}

fn ser_opt_display<T: Display, S: Serializer>(x: &Option<T>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub max_oracle: usize,
    /// Log2-domain tolerance, scaled by `max(1, |bound|)`.
    pub tolerance: f64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_oracle: DEFAULT_ORACLE_LIMIT,
            tolerance: 1e-9,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundEntry {
    pub name: String,
    pub kind: BoundKind,
    pub applicable: bool,
    pub reason: Option<String>,
    pub log2_value: Option<f64>,
    /// Fourth power of the bound when it is an integer.
    #[serde(serialize_with = "ser_opt_display")]
    pub exact_fourth_power: Option<BigInt>,
    /// `count^4` equals `exact_fourth_power`.
    pub tight: Option<bool>,
    /// `log2(bound) - log2(count)`.
    pub tightness: Option<f64>,
}

impl BoundEntry {
    fn upper(name: &str, log2: f64) -> BoundEntry {
        BoundEntry {
            name: name.into(),
            kind: BoundKind::Upper,
            applicable: true,
            reason: None,
            log2_value: Some(log2),
            exact_fourth_power: None,
            tight: None,
            tightness: None,
        }
    }

    fn not_applicable(name: &str, reason: impl Into<String>) -> BoundEntry {
        BoundEntry {
            applicable: false,
            reason: Some(reason.into()),
            log2_value: None,
            ..BoundEntry::upper(name, 0.0)
        }
    }

    fn fourth(mut self, x: BigInt) -> BoundEntry {
        self.exact_fourth_power = Some(x);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub pfaffian_certified: bool,
    #[serde(serialize_with = "ser_opt_display")]
    pub exact_count: Option<BigUint>,
    #[serde(serialize_with = "ser_opt_display")]
    pub pfaffian_count: Option<BigUint>,
    #[serde(serialize_with = "ser_opt_display")]
    pub oracle_count: Option<BigUint>,
    pub edge_bound: Option<EdgeBound>,
    pub decomposition: Option<CircularDecomposition>,
    pub bounds: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn bound(&self, name: &str) -> Option<&BoundEntry> {
        self.bounds.iter().find(|b| b.name == name)
    }
}

fn not_applicable_from(name: &str, e: Error) -> Result<BoundEntry> {
    match e {
        Error::Precondition(r) => Ok(BoundEntry::not_applicable(name, r)),
        Error::Disconnected => Ok(BoundEntry::not_applicable(name, "graph is disconnected")),
        other => Err(other),
    }
}

/// Exact count plus every bound whose hypotheses can be certified, checked
/// for soundness. A violated bound is an error.
pub fn compare_all(entry: &CorpusEntry, opts: &Options) -> Result<BoundReport> {
    let g = &entry.graph;
    let (pfaffian_count, orientation) = match (&entry.embedding, &entry.attested) {
        (Some(e), _) if g.is_connected() => {
            (Some(count_by_pfaffian(e)?), Some(kasteleyn_orient(e)?))
        }
        (_, Some(o)) => (Some(count_with_orientation(o)?), Some(o.clone())),
        _ => (None, None),
    };
    let oracle_count = (g.n() <= opts.max_oracle)
        .then(|| enumerate_perfect_matchings(g, opts.max_oracle))
        .transpose()?;
    if let (Some(p), Some(o)) = (&pfaffian_count, &oracle_count) {
        if p != o {
            return Err(Error::BoundViolated(format!(
                "{}: pfaffian count {p} differs from oracle count {o}",
                entry.id
            )));
        }
    }
    let exact_count = pfaffian_count.clone().or_else(|| oracle_count.clone());
    let gram: Option<GramMatrix> = orientation.as_ref().map(gram_matrix);
    let certified = entry.pfaffian_certified();
    let short = has_short_cycles(g);
    let cubic = g.regular_degree() == Some(3);
    let no_embedding = "no planar embedding or pfaffian attestation";

    let mut bounds = Vec::new();
    bounds.push(if certified {
        BoundEntry::upper("hadamard", hadamard_bound(g)).fourth(hadamard_fourth_power(g).into())
    } else {
        BoundEntry::not_applicable("hadamard", no_embedding)
    });
    bounds.push(BoundEntry::upper("bregman", bregman_bound(g)));
    bounds.push(match entry.embedding.as_ref().and_then(girth_bound) {
        Some(b) => BoundEntry::upper("girth", b.log2),
        None => BoundEntry::not_applicable("girth", "no embedding with a finite face girth"),
    });
    bounds.push(if !certified {
        BoundEntry::not_applicable("hf_square", no_embedding)
    } else {
        let m = greedy_maximal_matching(&square_graph(g), None);
        match hf_square_bound(g, &m) {
            Ok(v) => BoundEntry::upper("hf_square", v).fourth(hf_square_fourth_power(g, &m)?.into()),
            Err(e) => not_applicable_from("hf_square", e)?,
        }
    });
    bounds.push(if !certified {
        BoundEntry::not_applicable("cubic_no4", no_embedding)
    } else if !cubic || short.has4 {
        BoundEntry::not_applicable("cubic_no4", "needs a cubic graph without 4-cycles")
    } else {
        BoundEntry::upper("cubic_no4", cubic_no4_bound(g.n()))
    });

    let fullerene = entry.embedding.as_ref().is_some_and(|e| validate_fullerene(e).is_fullerene);
    if fullerene {
        for b in fullerene_hamiltonian_bounds(g.n(), entry.hamiltonian_cycle.is_some())? {
            bounds.push(BoundEntry::upper(&b.name, b.log2));
        }
    } else {
        bounds.push(BoundEntry::not_applicable("fullerene_long_cycle", "not a fullerene"));
    }

    let decomposition = match (&entry.embedding, &entry.hint) {
        (Some(e), hint) if g.is_connected() => detect_semicircular(e, hint.as_ref()),
        (None, Some(h)) => h.validate(g).is_ok().then(|| h.clone()),
        _ => None,
    };
    match (&decomposition, &gram) {
        (Some(cd), Some(b)) => {
            let r = hf_block_bound(cd, b)?;
            let fourth = r.fourth_power();
            bounds.push(BoundEntry::upper("hf_block", r.log2).fourth(fourth));
        }
        (None, _) => bounds.push(BoundEntry::not_applicable("hf_block", "no semi-circular structure detected")),
        (_, None) => bounds.push(BoundEntry::not_applicable("hf_block", no_embedding)),
    }
    match (&decomposition, certified) {
        (Some(cd), true) => {
            bounds.push(match ring_refined_bound(g, cd, gram.as_ref()) {
                Ok(r) => {
                    let fourth = &r.inner * r.ring_dets.iter().product::<BigInt>();
                    BoundEntry::upper("ring_refined", r.log2).fourth(fourth)
                }
                Err(e) => not_applicable_from("ring_refined", e)?,
            });
            bounds.push(match semicircular_cubic_bound(g, cd) {
                Ok(v) => BoundEntry::upper("semicircular_cubic", v),
                Err(e) => not_applicable_from("semicircular_cubic", e)?,
            });
        }
        _ => {
            let why = if certified { "no semi-circular structure detected" } else { no_embedding };
            bounds.push(BoundEntry::not_applicable("ring_refined", why));
            bounds.push(BoundEntry::not_applicable("semicircular_cubic", why));
        }
    }
    if entry.pentacap && g.n() >= 20 {
        bounds.push(BoundEntry {
            kind: BoundKind::Lower,
            ..BoundEntry::upper("pentacap_lower", pentacap_lower_bound(g.n())?)
        });
    }

    if let Some(count) = &exact_count {
        let lc = log2_big(count);
        for b in bounds.iter_mut().filter(|b| b.applicable) {
            let v = b.log2_value.expect("applicable bounds carry a value");
            let tol = opts.tolerance * v.abs().max(1.0);
            // A zero count sits below every upper bound, including a zero one.
            let sound = match b.kind {
                BoundKind::Upper => count.is_zero() || lc <= v + tol,
                BoundKind::Lower => !count.is_zero() && lc >= v - tol,
            };
            if !sound {
                return Err(Error::BoundViolated(format!(
                    "{}: count {count} against {} bound 2^{v}",
                    entry.id, b.name
                )));
            }
            b.tightness = (!count.is_zero() && v.is_finite()).then_some(v - lc);
            b.tight = b
                .exact_fourth_power
                .as_ref()
                .and_then(|f| f.to_biguint())
                .map(|f| is_tight(count, &f));
        }
    }

    Ok(BoundReport {
        id: entry.id.clone(),
        n: g.n(),
        m: g.m(),
        pfaffian_certified: certified,
        exact_count,
        pfaffian_count,
        oracle_count,
        edge_bound: entry.embedding.as_ref().and_then(|e| e.check_edge_bound()),
        decomposition,
        bounds,
    })
}

/// `compare_all` per entry in parallel; results keep the corpus order.
pub fn run_corpus(entries: &[CorpusEntry], opts: &Options) -> Vec<Result<BoundReport>> {
    entries.par_iter().map(|e| compare_all(e, opts)).collect()
}

pub fn to_json(reports: &[BoundReport]) -> Result<String> {
    Ok(serde_json::to_string_pretty(reports)?)
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    n: usize,
    m: usize,
    exact_count: String,
    bound: &'a str,
    kind: BoundKind,
    applicable: bool,
    reason: &'a str,
    log2_value: Option<f64>,
    tightness: Option<f64>,
    tight: Option<bool>,
}

/// One row per graph and bound.
pub fn write_csv<W: Write>(reports: &[BoundReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        let count = r.exact_count.as_ref().map(ToString::to_string).unwrap_or_default();
        for b in &r.bounds {
            w.serialize(CsvRow {
                id: &r.id,
                n: r.n,
                m: r.m,
                exact_count: count.clone(),
                bound: &b.name,
                kind: b.kind,
                applicable: b.applicable,
                reason: b.reason.as_deref().unwrap_or(""),
                log2_value: b.log2_value,
                tightness: b.tightness,
                tight: b.tight,
            })?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin_corpus;

    fn report(id: &str) -> BoundReport {
        let corpus = builtin_corpus().unwrap();
        let entry = corpus.iter().find(|c| c.id == id).unwrap();
        compare_all(entry, &Options::default()).unwrap()
    }

    #[test]
    fn octahedron_is_hadamard_tight() {
        let r = report("octahedron");
        assert_eq!(r.exact_count, Some(BigUint::from(8u32)));
        assert_eq!(r.bound("hadamard").unwrap().tight, Some(true));
        assert!(r.bound("bregman").unwrap().tightness.unwrap() > 0.1);
    }

    #[test]
    fn k33_has_no_certified_hadamard_bound() {
        let r = report("K3,3");
        assert!(!r.bound("hadamard").unwrap().applicable);
        assert_eq!(r.exact_count, Some(BigUint::from(6u32)));
        assert!(r.bound("bregman").unwrap().tightness.unwrap().abs() < 1e-9);
    }

    #[test]
    fn dodecahedron_bounds_hold() {
        let r = report("dodecahedron");
        assert_eq!(r.exact_count, Some(BigUint::from(36u32)));
        for name in ["hadamard", "girth", "hf_square", "cubic_no4", "hf_block", "ring_refined", "semicircular_cubic"] {
            assert!(r.bound(name).unwrap().applicable, "{name}");
        }
        let v = r.bound("semicircular_cubic").unwrap().log2_value.unwrap();
        assert!((v.exp2() - 147.36).abs() < 0.01);
    }

    #[test]
    fn false_attestation_is_an_error() {
        let corpus = builtin_corpus().unwrap();
        let mut entry = corpus.iter().find(|c| c.id == "K3,3").unwrap().clone();
        entry.attested = Some(crate::pfaffian::Orientation::ascending(entry.graph.clone()));
        assert!(compare_all(&entry, &Options::default()).is_err());
    }

    #[test]
    fn csv_has_a_row_per_bound() {
        let r = report("K4");
        let mut buf = Vec::new();
        write_csv(std::slice::from_ref(&r), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + r.bounds.len());
        assert!(to_json(&[r]).unwrap().contains("\"hadamard\""));
    }
}
