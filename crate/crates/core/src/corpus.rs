//! The builtin corpus of test graphs and loading of graph files.

use std::collections::BTreeSet;
use std::path::Path;

use serde::Serialize;

use crate::circular::CircularDecomposition;
use crate::classic::embedded;
use crate::embedding::{EmbeddingJson, PlanarEmbedding};
use crate::error::{param, Result};
use crate::fullerene::{cap, extend_cap, Family};
use crate::graph::{make_classic, Classic, Graph, GraphJson};
use crate::pfaffian::{k4k2_fixture, Orientation};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    /// `builtin` or the file path.
    pub source: String,
    pub graph: Graph,
    pub embedding: Option<PlanarEmbedding>,
    /// A pfaffian orientation attested for a non-planar fixture.
    pub attested: Option<Orientation>,
    pub hint: Option<CircularDecomposition>,
    /// A known hamiltonian cycle, validated on construction.
    pub hamiltonian_cycle: Option<Vec<usize>>,
    /// Member of the pentacap family, where the lower envelope applies.
    pub pentacap: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntrySummary {
    pub id: String,
    pub source: String,
    pub n: usize,
    pub m: usize,
    pub embedded: bool,
    pub attested: bool,
}

impl CorpusEntry {
    pub fn from_graph(id: impl Into<String>, graph: Graph) -> CorpusEntry {
        CorpusEntry {
            id: id.into(),
            source: "builtin".into(),
            graph,
            embedding: None,
            attested: None,
            hint: None,
            hamiltonian_cycle: None,
            pentacap: false,
        }
    }

    pub fn from_embedding(id: impl Into<String>, e: PlanarEmbedding) -> CorpusEntry {
        let mut c = CorpusEntry::from_graph(id, e.graph().clone());
        c.embedding = Some(e);
        c
    }

    pub fn with_hamiltonian_cycle(mut self, cycle: Vec<usize>) -> Result<CorpusEntry> {
        let g = &self.graph;
        let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
        if cycle.len() != g.n() || distinct.len() != g.n() || cycle.iter().any(|&v| v >= g.n()) {
            return param("hamiltonian cycle must visit every vertex once");
        }
        let closed = (0..cycle.len()).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
        if !closed {
            return param("hamiltonian cycle uses a non-edge");
        }
        self.hamiltonian_cycle = Some(cycle);
        Ok(self)
    }

    /// The count can be certified by a determinant.
    pub fn pfaffian_certified(&self) -> bool {
        self.embedding.is_some() || self.attested.is_some()
    }

    pub fn summary(&self) -> EntrySummary {
        EntrySummary {
            id: self.id.clone(),
            source: self.source.clone(),
            n: self.graph.n(),
            m: self.graph.m(),
            embedded: self.embedding.is_some(),
            attested: self.attested.is_some(),
        }
    }
}

fn classic_entry(id: &str, kind: Classic) -> Result<CorpusEntry> {
    match embedded(kind) {
        Ok(e) => Ok(CorpusEntry::from_embedding(id, e)),
        Err(_) => Ok(CorpusEntry::from_graph(id, make_classic(kind)?)),
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Pentacap => "pentacap",
        Family::Hexacap => "hexacap",
    }
}

/// Small classic graphs, the `K_4 x K_2` fixture and the fullerene families.
/// Ids are unique and the order is fixed.
pub fn builtin_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = vec![
        classic_entry("K4", Classic::Complete(4))?,
        classic_entry("K6", Classic::Complete(6))?,
    ];
    for n in 4..=12 {
        out.push(classic_entry(&format!("C{n}"), Classic::Cycle(n))?);
    }
    for r in 1..=3 {
        out.push(classic_entry(&format!("K{r},{r}"), Classic::CompleteBipartite(r))?);
    }
    out.push(classic_entry("C4xK2", Classic::Prism(4))?);
    let mut fixture = CorpusEntry::from_graph("K4xK2", k4k2_fixture().graph().clone());
    fixture.attested = Some(k4k2_fixture());
    out.push(fixture);
    out.push(classic_entry("octahedron", Classic::Octahedron)?);
    out.push(classic_entry("dodecahedron", Classic::Dodecahedron)?);

    for (family, layers) in [
        (Family::Pentacap, 1),
        (Family::Pentacap, 2),
        (Family::Pentacap, 3),
        (Family::Hexacap, 1),
        (Family::Hexacap, 2),
    ] {
        let f = cap(family, layers)?;
        let name = family_name(family);
        let mut entry = CorpusEntry::from_embedding(format!("{name}({layers})"), f.embedding.clone());
        entry.hint = Some(f.decomposition.clone());
        entry.pentacap = family == Family::Pentacap;
        out.push(entry);
        if layers == 1 {
            let (e, cd) = extend_cap(&f.embedding, &f.decomposition)?;
            let mut entry = CorpusEntry::from_embedding(format!("extend({name}(1))"), e);
            entry.hint = Some(cd);
            entry.pentacap = family == Family::Pentacap;
            out.push(entry);
        }
    }
    for (family, layers) in [
        (Family::Pentacap, 1),
        (Family::Pentacap, 2),
        (Family::Pentacap, 3),
        (Family::Hexacap, 1),
    ] {
        let f = cap(family, layers)?;
        let le = f.embedding.leapfrog()?;
        out.push(CorpusEntry::from_embedding(
            format!("Le({}({layers}))", family_name(family)),
            le,
        ));
    }
    Ok(out)
}

/// Loads a graph or an embedding JSON file. Files carrying a `rotation`
/// field become embedded entries.
pub fn load_file(path: &Path) -> Result<CorpusEntry> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let mut entry = if value.get("rotation").is_some() {
        let j: EmbeddingJson = serde_json::from_value(value)?;
        CorpusEntry::from_embedding(id, PlanarEmbedding::try_from(j)?)
    } else {
        let j: GraphJson = serde_json::from_value(value)?;
        CorpusEntry::from_graph(id, Graph::try_from(j)?)
    };
    entry.source = path.display().to_string();
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_ids_are_unique_and_valid() {
        let corpus = builtin_corpus().unwrap();
        let ids: BTreeSet<&str> = corpus.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), corpus.len());
        for c in &corpus {
            if let Some(e) = &c.embedding {
                assert_eq!(e.graph(), &c.graph);
            }
            if let Some(h) = &c.hint {
                h.validate(&c.graph).unwrap();
            }
        }
        let k33 = corpus.iter().find(|c| c.id == "K3,3").unwrap();
        assert!(!k33.pfaffian_certified());
        let le = corpus.iter().find(|c| c.id == "Le(pentacap(3))").unwrap();
        assert_eq!(le.graph.n(), 120);
    }

    #[test]
    fn hamiltonian_cycles_are_checked() {
        let c = classic_entry("C5", Classic::Cycle(5)).unwrap();
        assert!(c.clone().with_hamiltonian_cycle(vec![0, 1, 2, 3, 4]).is_ok());
        assert!(c.clone().with_hamiltonian_cycle(vec![0, 2, 1, 3, 4]).is_err());
        assert!(c.with_hamiltonian_cycle(vec![0, 1, 2, 3]).is_err());
    }
}
