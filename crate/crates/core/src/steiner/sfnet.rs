//! Near-maximal net of pairs for the Steiner forest solver.
//!
//! Pairs that are still far apart after identifying the chosen pairs and
//! the fake links are taken one at a time (smallest pair id first). Each
//! endpoint either becomes a witness or is linked to a nearby witness.

use super::distance_table;
use crate::error::{Error, Result};
use crate::graph::{gw_steiner_forest, DisjointSet, Edge, EdgeSet, Pair, ShortestPaths, WeightedGraph};
use crate::rational::{int, Rational};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SfnetResult {
    pub gamma: Rational,
    /// `S_g ∪ S_o`.
    pub net: BTreeSet<usize>,
    pub sr: Vec<usize>,
    pub sg: BTreeSet<usize>,
    pub so: BTreeSet<usize>,
    pub sb: BTreeSet<usize>,
    /// `(terminal, witness)` fake links.
    pub sf_links: Vec<(usize, usize)>,
    pub witnesses: BTreeSet<usize>,
    /// For each net pair, the endpoint it contributed as a witness.
    pub anchors: BTreeMap<usize, usize>,
    pub e_alg: EdgeSet,
}

pub fn sfnet_build(g: &WeightedGraph, pairs: &[Pair], gamma: &Rational) -> Result<SfnetResult> {
    let dist = distance_table(g);
    for p in pairs {
        if dist[p.s][p.t].is_none() {
            return Err(Error::Disconnected(p.s, p.t));
        }
    }
    let four_gamma = int(4) * gamma;
    let two_gamma = int(2) * gamma;
    let mut order: Vec<&Pair> = pairs.iter().collect();
    order.sort_by_key(|p| p.id);

    let mut out = SfnetResult {
        gamma: gamma.clone(),
        net: BTreeSet::new(),
        sr: Vec::new(),
        sg: BTreeSet::new(),
        so: BTreeSet::new(),
        sb: BTreeSet::new(),
        sf_links: Vec::new(),
        witnesses: BTreeSet::new(),
        anchors: BTreeMap::new(),
        e_alg: EdgeSet::empty(),
    };
    let mut identified = DisjointSet::new(g.vertex_count());

    loop {
        let quotient = identify(g, &mut identified);
        let far = order.iter().find(|p| {
            let (a, b) = (identified.find(p.s), identified.find(p.t));
            ShortestPaths::run(&quotient, &[a]).dist[b]
                .as_ref()
                .is_none_or(|d| d > &four_gamma)
        });
        let Some(&p) = far else { break };
        out.sr.push(p.id);
        identified.union(p.s, p.t);

        let mut added = Vec::new();
        for x in [p.s, p.t] {
            let near = out
                .witnesses
                .iter()
                .copied()
                .find(|&w| dist[x][w].as_ref().is_some_and(|d| d < &two_gamma));
            match near {
                // A terminal that is already a witness needs no link.
                Some(w) if w == x => {}
                Some(w) => {
                    out.sf_links.push((x, w));
                    identified.union(x, w);
                }
                None => {
                    out.witnesses.insert(x);
                    added.push(x);
                }
            }
        }
        match added.len() {
            0 => out.sb.insert(p.id),
            1 => out.so.insert(p.id),
            _ => out.sg.insert(p.id),
        };
        if let Some(&z) = added.first() {
            out.anchors.insert(p.id, z);
        }
    }

    let chosen: Vec<Pair> = out
        .sr
        .iter()
        .map(|id| {
            order
                .iter()
                .find(|p| p.id == *id)
                .copied()
                .cloned()
                .expect("known pair")
        })
        .collect();
    let mut ids = gw_steiner_forest(g, &chosen)?.ids;
    for &(x, w) in &out.sf_links {
        ids.extend(
            ShortestPaths::run(g, &[w])
                .path_to(x)
                .expect("linked vertices are close"),
        );
    }
    out.e_alg = g.edge_set(ids)?;
    out.net = out.sg.union(&out.so).copied().collect();
    Ok(out)
}

/// `g` with each class of `dsu` collapsed onto one vertex (its root).
fn identify(g: &WeightedGraph, dsu: &mut DisjointSet) -> WeightedGraph {
    let edges = g
        .edges()
        .iter()
        .filter_map(|e| {
            let (u, v) = (dsu.find(e.u), dsu.find(e.v));
            (u != v).then(|| Edge {
                id: e.id,
                u,
                v,
                cost: e.cost.clone(),
            })
        })
        .collect();
    WeightedGraph::from_edges(g.vertex_count(), edges).expect("quotient of a valid graph")
}

impl SfnetResult {
    /// Checks the structural guarantees of the construction and returns the
    /// first violated one.
    pub fn check(&self, g: &WeightedGraph, pairs: &[Pair]) -> std::result::Result<(), String> {
        let dist = distance_table(g);
        let d = |a: usize, b: usize| dist[a][b].clone();
        let sr: BTreeSet<usize> = self.sr.iter().copied().collect();
        let parts: BTreeSet<usize> = self.sg.iter().chain(&self.so).chain(&self.sb).copied().collect();
        if parts != sr || self.sg.len() + self.so.len() + self.sb.len() != sr.len() {
            return Err("S_r is not the disjoint union of S_g, S_o, S_b".into());
        }
        let pair = |id: usize| pairs.iter().find(|p| p.id == id).expect("known pair");
        for &i in &self.net {
            let p = pair(i);
            if !d(p.s, p.t).is_some_and(|x| x > self.gamma) {
                return Err(format!("net pair {i} is within {}", self.gamma));
            }
            match self.anchors.get(&i) {
                Some(&z) if z == p.s || z == p.t => {}
                _ => return Err(format!("net pair {i} has no anchor endpoint")),
            }
        }
        // Radius-γ balls around points at distance ≥ 2γ do not overlap.
        let anchors: Vec<usize> = self.anchors.values().copied().collect();
        let two_gamma = int(2) * &self.gamma;
        for (a, &x) in anchors.iter().enumerate() {
            for &y in &anchors[a + 1..] {
                if x == y || d(x, y).is_some_and(|v| v < two_gamma) {
                    return Err(format!("witness balls at {x} and {y} overlap"));
                }
            }
        }
        if self.sb.len() > self.net.len() {
            return Err(format!(
                "|S_b| = {} exceeds |N| = {}",
                self.sb.len(),
                self.net.len()
            ));
        }
        if self.sf_links.len() > 2 * self.net.len() {
            return Err(format!("|S_f| = {} exceeds 2|N|", self.sf_links.len()));
        }
        let mut dsu = DisjointSet::new(g.vertex_count());
        for &i in &self.sr {
            let p = pair(i);
            dsu.union(p.s, p.t);
        }
        for &(x, w) in &self.sf_links {
            dsu.union(x, w);
        }
        let quotient = identify(g, &mut dsu);
        let limit = int(4) * &self.gamma;
        for p in pairs {
            let (a, b) = (dsu.find(p.s), dsu.find(p.t));
            if !ShortestPaths::run(&quotient, &[a]).dist[b]
                .as_ref()
                .is_some_and(|x| x <= &limit)
            {
                return Err(format!("pair {} is still farther than 4γ", p.id));
            }
        }
        let mut bought = g.components_of(&self.e_alg.ids);
        if let Some(i) = self.sr.iter().find(|&&i| !bought.same(pair(i).s, pair(i).t)) {
            return Err(format!("E_alg does not connect pair {i}"));
        }
        Ok(())
    }
}
