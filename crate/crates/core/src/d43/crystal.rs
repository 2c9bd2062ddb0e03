//! Generic crystal interface, `T_λ`, tensor products and crystal graphs.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Write as _};
use std::hash::Hash;

use serde::Serialize;

use super::{CrystalElem, D43};
use crate::cartan::ClassicalWeight;

/// An integer or `−∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Fin(i64),
}

impl Ext {
    pub fn shift(self, k: i64) -> Ext {
        match self {
            Ext::NegInf => Ext::NegInf,
            Ext::Fin(v) => Ext::Fin(v + k),
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::Fin(v) => write!(f, "{v}"),
        }
    }
}

/// Elements are assumed valid; implementations may panic otherwise.
pub trait Crystal {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn rank(&self) -> usize;
    fn e(&self, i: usize, b: &Self::Elem) -> Option<Self::Elem>;
    fn f(&self, i: usize, b: &Self::Elem) -> Option<Self::Elem>;
    fn eps(&self, i: usize, b: &Self::Elem) -> Ext;
    fn phi(&self, i: usize, b: &Self::Elem) -> Ext;
    fn wt(&self, b: &Self::Elem) -> ClassicalWeight;
    fn label(&self, b: &Self::Elem) -> String;
}

impl Crystal for D43 {
    type Elem = CrystalElem;

    fn rank(&self) -> usize {
        3
    }
    fn e(&self, i: usize, b: &CrystalElem) -> Option<CrystalElem> {
        self.e_tilde(i, b).expect("valid element")
    }
    fn f(&self, i: usize, b: &CrystalElem) -> Option<CrystalElem> {
        self.f_tilde(i, b).expect("valid element")
    }
    fn eps(&self, i: usize, b: &CrystalElem) -> Ext {
        Ext::Fin(D43::eps(self, i, b).expect("valid element"))
    }
    fn phi(&self, i: usize, b: &CrystalElem) -> Ext {
        Ext::Fin(D43::phi(self, i, b).expect("valid element"))
    }
    fn wt(&self, b: &CrystalElem) -> ClassicalWeight {
        D43::wt(self, b).expect("valid element")
    }
    fn label(&self, b: &CrystalElem) -> String {
        b.node_id()
    }
}

/// The single element `t_λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TElem;

/// Singleton crystal with `ε = φ = −∞` and no arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TLambda {
    lambda: ClassicalWeight,
}

impl TLambda {
    pub fn new(lambda: ClassicalWeight) -> Self {
        TLambda { lambda }
    }
}

impl Crystal for TLambda {
    type Elem = TElem;

    fn rank(&self) -> usize {
        self.lambda.coeffs().len()
    }
    fn e(&self, _: usize, _: &TElem) -> Option<TElem> {
        None
    }
    fn f(&self, _: usize, _: &TElem) -> Option<TElem> {
        None
    }
    fn eps(&self, _: usize, _: &TElem) -> Ext {
        Ext::NegInf
    }
    fn phi(&self, _: usize, _: &TElem) -> Ext {
        Ext::NegInf
    }
    fn wt(&self, _: &TElem) -> ClassicalWeight {
        self.lambda.clone()
    }
    fn label(&self, _: &TElem) -> String {
        format!("t_{}", self.lambda)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorElem<L, R> {
    pub left: L,
    pub right: R,
}

impl<L, R> TensorElem<L, R> {
    pub fn new(left: L, right: R) -> Self {
        TensorElem { left, right }
    }
}

/// `A ⊗ B` with the signal rule: `f̃` acts on the left iff `φ(b1) > ε(b2)`,
/// `ẽ` acts on the left iff `φ(b1) ≥ ε(b2)`.
#[derive(Debug, Clone)]
pub struct Tensor<A, B>(pub A, pub B);

impl<A: Crystal, B: Crystal> Crystal for Tensor<A, B> {
    type Elem = TensorElem<A::Elem, B::Elem>;

    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn e(&self, i: usize, t: &Self::Elem) -> Option<Self::Elem> {
        if self.0.phi(i, &t.left) < self.1.eps(i, &t.right) {
            self.1.e(i, &t.right).map(|r| TensorElem::new(t.left.clone(), r))
        } else {
            self.0.e(i, &t.left).map(|l| TensorElem::new(l, t.right.clone()))
        }
    }

    fn f(&self, i: usize, t: &Self::Elem) -> Option<Self::Elem> {
        if self.0.phi(i, &t.left) > self.1.eps(i, &t.right) {
            self.0.f(i, &t.left).map(|l| TensorElem::new(l, t.right.clone()))
        } else {
            self.1.f(i, &t.right).map(|r| TensorElem::new(t.left.clone(), r))
        }
    }

    /// `max(ε(b1), ε(b2) − <h_i, wt b1>)`.
    fn eps(&self, i: usize, t: &Self::Elem) -> Ext {
        let w1 = self.0.wt(&t.left).pairing(i);
        self.0.eps(i, &t.left).max(self.1.eps(i, &t.right).shift(-w1))
    }

    /// `max(φ(b2), φ(b1) + <h_i, wt b2>)`.
    fn phi(&self, i: usize, t: &Self::Elem) -> Ext {
        let w2 = self.1.wt(&t.right).pairing(i);
        self.1.phi(i, &t.right).max(self.0.phi(i, &t.left).shift(w2))
    }

    fn wt(&self, t: &Self::Elem) -> ClassicalWeight {
        self.0.wt(&t.left).add(&self.1.wt(&t.right))
    }

    fn label(&self, t: &Self::Elem) -> String {
        format!("{}__{}", self.0.label(&t.left), self.1.label(&t.right))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub i: usize,
}

/// Nodes in the given order; one edge `b -> f̃_i b` per non-null arrow whose
/// target is among the nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrystalGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
}

pub fn crystal_graph<C: Crystal>(c: &C, elements: &[C::Elem]) -> CrystalGraph {
    let index: BTreeMap<&C::Elem, usize> = elements.iter().enumerate().map(|(k, b)| (b, k)).collect();
    let mut edges = Vec::new();
    for (from, b) in elements.iter().enumerate() {
        for i in 0..c.rank() {
            if let Some(to) = c.f(i, b).and_then(|x| index.get(&x).copied()) {
                edges.push(Edge { from, to, i });
            }
        }
    }
    CrystalGraph { nodes: elements.iter().map(|b| c.label(b)).collect(), edges }
}

impl CrystalGraph {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph crystal {\n");
        for n in &self.nodes {
            let _ = writeln!(s, "  \"{n}\";");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\"];", self.nodes[e.from], self.nodes[e.to], e.i);
        }
        s.push_str("}\n");
        s
    }

    /// `{"nodes": [...], "adjacency": {node: [{"i": i, "to": node}, ...]}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut adj = serde_json::Map::new();
        for n in &self.nodes {
            adj.insert(n.clone(), serde_json::Value::Array(Vec::new()));
        }
        for e in &self.edges {
            if let Some(serde_json::Value::Array(v)) = adj.get_mut(&self.nodes[e.from]) {
                v.push(serde_json::json!({"i": e.i, "to": self.nodes[e.to]}));
            }
        }
        serde_json::json!({"nodes": self.nodes, "adjacency": adj})
    }
}
