//! The graph model of a pair: one white vertex per cycle of the white
//! permutation, one black vertex per cycle of the black permutation, one
//! edge per ground element joining its two cycles.
//!
//! Vertices are named by the smallest element of their cycle. The model
//! gives a second, independent route to transitivity (connectedness via
//! union-find instead of orbit closure) and hosts the walk machinery used
//! by the connectivity criteria.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::label::{ElementLabel, GroundSet};
use crate::pair::PermutationPair;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexColor {
    White,
    Black,
}

impl fmt::Display for VertexColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexColor::White => "W",
            VertexColor::Black => "B",
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub struct BicoloredGraph {
    ground: GroundSet,
    white_of: Vec<u32>,
    black_of: Vec<u32>,
    white_ids: Vec<ElementLabel>,
    black_ids: Vec<ElementLabel>,
}

/// Builds the graph model of a pair.
pub fn build_model(pair: &PermutationPair) -> BicoloredGraph {
    let ground = pair.ground().clone();
    let n = ground.len();
    let assign = |p: &Permutation| {
        let mut of = alloc::vec![0u32; n];
        let mut ids = Vec::new();
        for cycle in p.cycles() {
            let id = ids.len() as u32;
            ids.push(cycle.min_label());
            for &e in cycle.as_slice() {
                of[ground.index_of(e).unwrap()] = id;
            }
        }
        (of, ids)
    };
    let (white_of, white_ids) = assign(pair.white());
    let (black_of, black_ids) = assign(pair.black());
    BicoloredGraph {
        ground,
        white_of,
        black_of,
        white_ids,
        black_ids,
    }
}

impl BicoloredGraph {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// White vertex names in increasing order.
    pub fn white_vertices(&self) -> &[ElementLabel] {
        &self.white_ids
    }

    pub fn black_vertices(&self) -> &[ElementLabel] {
        &self.black_ids
    }

    pub fn white_vertex_of(&self, e: ElementLabel) -> Result<ElementLabel, Error> {
        let i = self.ground.index_of(e).ok_or(Error::NotInGround(e))?;
        Ok(self.white_ids[self.white_of[i] as usize])
    }

    pub fn black_vertex_of(&self, e: ElementLabel) -> Result<ElementLabel, Error> {
        let i = self.ground.index_of(e).ok_or(Error::NotInGround(e))?;
        Ok(self.black_ids[self.black_of[i] as usize])
    }

    /// Edge sets of the white vertices, ordered as `white_vertices`.
    pub fn white_partition(&self) -> Vec<Vec<ElementLabel>> {
        let mut parts = alloc::vec![Vec::new(); self.white_ids.len()];
        for (i, &v) in self.white_of.iter().enumerate() {
            parts[v as usize].push(self.ground.elem(i));
        }
        parts
    }

    pub fn black_partition(&self) -> Vec<Vec<ElementLabel>> {
        let mut parts = alloc::vec![Vec::new(); self.black_ids.len()];
        for (i, &v) in self.black_of.iter().enumerate() {
            parts[v as usize].push(self.ground.elem(i));
        }
        parts
    }

    fn joined(&self, skip: &[usize]) -> UnionFind {
        let wn = self.white_ids.len();
        let mut uf = UnionFind::new(wn + self.black_ids.len());
        for i in 0..self.ground.len() {
            if skip.contains(&i) {
                continue;
            }
            uf.union(self.white_of[i] as usize, wn + self.black_of[i] as usize);
        }
        uf
    }

    pub fn component_count(&self) -> usize {
        let mut uf = self.joined(&[]);
        let total = self.white_ids.len() + self.black_ids.len();
        (0..total).filter(|&v| uf.find(v) == v).count()
    }

    /// Component representatives of the endpoints of edges `a` and `b` in
    /// the graph with those two edges removed and all vertices kept, as
    /// `(white of a, black of a, white of b, black of b)`.
    pub fn side_components_without(
        &self,
        a: ElementLabel,
        b: ElementLabel,
    ) -> Result<(usize, usize, usize, usize), Error> {
        let ia = self.ground.index_of(a).ok_or(Error::NotInGround(a))?;
        let ib = self.ground.index_of(b).ok_or(Error::NotInGround(b))?;
        if ia == ib {
            return Err(Error::SameElement(a));
        }
        let wn = self.white_ids.len();
        let mut uf = self.joined(&[ia, ib]);
        Ok((
            uf.find(self.white_of[ia] as usize),
            uf.find(wn + self.black_of[ia] as usize),
            uf.find(self.white_of[ib] as usize),
            uf.find(wn + self.black_of[ib] as usize),
        ))
    }
}

/// Transitivity read off the graph: the model is connected.
pub fn is_transitive_via_graph(pair: &PermutationPair) -> bool {
    build_model(pair).component_count() == 1
}

/// Connectivity criterion for the pair conjugated at `(a, b)`: with edges
/// `a` and `b` removed, some walk rejoins an endpoint pair drawn from the
/// four vertices of `a` and `b`.
pub fn wild_walk_criterion(
    pair: &PermutationPair,
    a: ElementLabel,
    b: ElementLabel,
) -> Result<bool, Error> {
    pair.check_marked(a, b)?;
    let (wa, ba, wb, bb) = build_model(pair).side_components_without(a, b)?;
    Ok(wa == ba || wb == bb || wa == wb || ba == bb)
}

/// The two-walk restriction of `wild_walk_criterion`: only walks rejoining
/// the two endpoints of one removed edge count.
pub fn tame_walk_criterion(
    pair: &PermutationPair,
    a: ElementLabel,
    b: ElementLabel,
) -> Result<bool, Error> {
    pair.check_marked(a, b)?;
    let (wa, ba, wb, bb) = build_model(pair).side_components_without(a, b)?;
    Ok(wa == ba || wb == bb)
}

/// How much to shave off a walk's ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trim {
    None,
    First,
    Last,
    Both,
}

/// An alternating walk in the graph model: vertices and the edges between
/// them, with `vertices.len() == edges.len() + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    vertices: Vec<(VertexColor, ElementLabel)>,
    edges: Vec<ElementLabel>,
}

impl Walk {
    pub fn vertices(&self) -> &[(VertexColor, ElementLabel)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[ElementLabel] {
        &self.edges
    }

    /// The walk as alternating vertex colors and edge labels, for instance
    /// `"W, 1, B, 2, W"`.
    pub fn pattern(&self) -> String {
        let mut out = String::new();
        for (i, (color, _)) in self.vertices.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("{color}"));
            if i < self.edges.len() {
                out.push_str(&format!(", {}", self.edges[i]));
            }
        }
        out
    }

    fn drop_first(&mut self) {
        if !self.edges.is_empty() {
            self.vertices.remove(0);
            self.edges.remove(0);
        }
    }

    fn drop_last(&mut self) {
        if !self.edges.is_empty() {
            self.vertices.pop();
            self.edges.pop();
        }
    }
}

/// Expands a product sequence into the walk it traces in the graph model:
/// each step from `x` to the next element runs along edge `x` and then the
/// black-successor edge of `x`.
///
/// Fails with `BadSequence` when the sequence is empty or some step is not
/// the product image of its predecessor. Trimming drops an end vertex with
/// its end edge; trims on a walk with no edges left do nothing, so both
/// trims on a one-element sequence leave just the black endpoint.
pub fn walk_from_sequence(
    pair: &PermutationPair,
    seq: &[ElementLabel],
    trim: Trim,
) -> Result<Walk, Error> {
    if seq.is_empty() {
        return Err(Error::BadSequence);
    }
    for &x in seq {
        if !pair.ground().contains(x) {
            return Err(Error::NotInGround(x));
        }
    }
    let product = pair.product();
    for step in seq.windows(2) {
        if product.apply(step[0]) != step[1] {
            return Err(Error::BadSequence);
        }
    }
    let white = pair.white();
    let black = pair.black();
    let mut vertices = Vec::with_capacity(2 * seq.len());
    let mut edges = Vec::with_capacity(2 * seq.len() - 1);
    for (i, &x) in seq.iter().enumerate() {
        vertices.push((VertexColor::White, white.orbit_min(x).unwrap()));
        edges.push(x);
        vertices.push((VertexColor::Black, black.orbit_min(x).unwrap()));
        if i + 1 < seq.len() {
            edges.push(black.apply(x));
        }
    }
    let mut walk = Walk { vertices, edges };
    match trim {
        Trim::None => {}
        Trim::First => walk.drop_first(),
        Trim::Last => walk.drop_last(),
        Trim::Both => {
            walk.drop_first();
            walk.drop_last();
        }
    }
    Ok(walk)
}

/// Renders the graph model in Graphviz dot syntax, white vertices hollow
/// and black vertices filled.
pub fn export_dot(pair: &PermutationPair) -> String {
    let model = build_model(pair);
    let mut out = String::from("graph dessin {\n  node [shape=circle];\n");
    for id in model.white_vertices() {
        out.push_str(&format!("  \"W{id}\" [label=\"{id}\", style=solid];\n"));
    }
    for id in model.black_vertices() {
        out.push_str(&format!(
            "  \"B{id}\" [label=\"{id}\", style=filled, fillcolor=black, fontcolor=white];\n"
        ));
    }
    for e in pair.ground().iter() {
        let w = model.white_vertex_of(e).unwrap();
        let b = model.black_vertex_of(e).unwrap();
        out.push_str(&format!("  \"W{w}\" -- \"B{b}\" [label=\"{e}\"];\n"));
    }
    out.push_str("}\n");
    out
}
