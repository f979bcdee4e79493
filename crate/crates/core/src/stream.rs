use alloc::vec::Vec;

use crate::error::{invalid, Result};

/// An insertion-only edge stream over vertices `0..num_vertices`.
///
/// Undirected edges are stored as `(u, v)` with `u < v`; self-loops are
/// rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphStream {
    num_vertices: usize,
    directed: bool,
    edges: Vec<(usize, usize)>,
}

impl GraphStream {
    pub fn new(num_vertices: usize, directed: bool) -> Self {
        Self {
            num_vertices,
            directed,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(
        num_vertices: usize,
        directed: bool,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut stream = Self::new(num_vertices, directed);
        for (u, v) in edges {
            stream.push(u, v)?;
        }
        Ok(stream)
    }

    /// Appends an edge, canonicalizing undirected endpoints.
    pub fn push(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.num_vertices || v >= self.num_vertices {
            return Err(invalid!(
                "edge ({u}, {v}) outside {} vertices",
                self.num_vertices
            ));
        }
        if u == v {
            return Err(invalid!("self-loop at vertex {u}"));
        }
        let edge = if self.directed || u < v { (u, v) } else { (v, u) };
        self.edges.push(edge);
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Same vertices and orientation, edges in the given order.
    pub(crate) fn with_edges(&self, edges: Vec<(usize, usize)>) -> Self {
        Self {
            num_vertices: self.num_vertices,
            directed: self.directed,
            edges,
        }
    }
}
