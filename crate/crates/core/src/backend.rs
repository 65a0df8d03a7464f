//! The order backend contract and its two instantiations: explicit finite
//! lattices (exhaustive) and the homomorphism order of finite digraphs
//! (bounded).

use serde_json::json;
use thiserror::Error;

use crate::canon::{canonical_form, enumerate_digraphs, MAX_CANON_VERTICES};
use crate::digraph::{
    coproduct, core_of, hom_exists, is_forest_orientation, product, weak_components, Digraph,
    DigraphError,
};
use crate::lattice::{FiniteLattice, LatticeError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("antichain condition fails: `{0}` and `{1}` are comparable")]
    MalformedAntichain(String, String),
    #[error("missing right dual for component `{0}`")]
    MissingRightDual(String),
    #[error("element `{0}` has no connected decomposition")]
    NoDecomposition(String),
    #[error("inconsistent duality data: {0}")]
    Inconsistent(String),
    #[error("meet of right duals is `{computed}`, expected `{expected}`")]
    MeetMismatch { expected: String, computed: String },
    #[error("no duality pair realizes the gap (`{0}`, `{1}`)")]
    NoWitness(String, String),
    #[error("operation requires an exhaustive backend")]
    ExhaustiveRequired,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("`{0}` is not a maximal antichain: {1}")]
    NotMaximalAntichain(String, String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
}

impl From<LatticeError> for EngineError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::NoDecomposition(l) => EngineError::NoDecomposition(l),
            other => EngineError::Precondition(other.to_string()),
        }
    }
}

impl From<DigraphError> for EngineError {
    fn from(e: DigraphError) -> Self {
        EngineError::SizeLimit(e.to_string())
    }
}

/// A partial order with joins, meets, bounds, connected decompositions and
/// a bounded universe of representatives. The lattice backend enumerates
/// the entire order (`is_exhaustive`); the digraph backend enumerates a
/// truncation by vertex count, so verdicts over its universe are evidence
/// up to the bound rather than proofs.
pub trait OrderBackend {
    type Elem: Clone + Ord + std::fmt::Debug;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// Order-equivalence; this is element equality for all set-like
    /// operations over a backend.
    fn equivalent(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;

    /// Pairwise incomparable connected elements whose join is equivalent
    /// to `a`.
    fn components(&self, a: &Self::Elem) -> Result<Vec<Self::Elem>, EngineError>;

    /// Representatives up to the bound, in canonical order. Bounds above
    /// [`OrderBackend::max_bound`] saturate.
    fn universe(&self, bound: usize) -> &[Self::Elem];

    fn max_bound(&self) -> usize;

    /// The bound a verdict at `requested` should report.
    fn report_bound(&self, requested: usize) -> usize;

    fn is_exhaustive(&self) -> bool;

    /// Catalog shortcut for right duals, if the backend has one.
    fn right_dual_hint(&self, _l: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// Exact structural decision of weak-left-dual membership for
    /// non-bottom elements, when the backend knows one.
    fn structural_wld(&self, _a: &Self::Elem) -> Option<bool> {
        None
    }

    /// Exact structural decision of membership in the down-set of the
    /// weak left duals, when the backend knows one.
    fn structural_down_wld(&self, _a: &Self::Elem) -> Option<bool> {
        None
    }

    fn render(&self, a: &Self::Elem) -> String;
    fn elem_json(&self, a: &Self::Elem) -> serde_json::Value;
}

/// Exhaustive backend over an explicit finite lattice. Elements are
/// indices into the lattice's element list.
pub struct LatticeBackend {
    lattice: FiniteLattice,
    elements: Vec<usize>,
}

impl LatticeBackend {
    pub fn new(lattice: FiniteLattice) -> Self {
        let elements = (0..lattice.len()).collect();
        LatticeBackend { lattice, elements }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }
}

impl OrderBackend for LatticeBackend {
    type Elem = usize;

    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.lattice.leq(*a, *b)
    }

    fn join(&self, a: &usize, b: &usize) -> usize {
        self.lattice.join(*a, *b)
    }

    fn meet(&self, a: &usize, b: &usize) -> usize {
        self.lattice.meet(*a, *b)
    }

    fn bottom(&self) -> usize {
        self.lattice.bottom()
    }

    fn top(&self) -> usize {
        self.lattice.top()
    }

    fn components(&self, a: &usize) -> Result<Vec<usize>, EngineError> {
        Ok(self.lattice.components(*a)?)
    }

    fn universe(&self, _bound: usize) -> &[usize] {
        &self.elements
    }

    fn max_bound(&self) -> usize {
        self.lattice.len()
    }

    fn report_bound(&self, _requested: usize) -> usize {
        self.lattice.len()
    }

    fn is_exhaustive(&self) -> bool {
        true
    }

    fn render(&self, a: &usize) -> String {
        self.lattice.label(*a).to_string()
    }

    fn elem_json(&self, a: &usize) -> serde_json::Value {
        json!(self.lattice.label(*a))
    }
}

/// Bounded backend over the homomorphism order of finite digraphs.
///
/// The universe holds one canonical core per isomorphism class with at
/// most `bound` vertices; the order is hom-existence, join is the
/// coproduct and meet the product, both reduced to canonical cores.
pub struct DigraphBackend {
    bound: usize,
    universe: Vec<Digraph>,
    prefix_len: Vec<usize>,
}

impl DigraphBackend {
    pub fn new(bound: usize) -> Result<Self, DigraphError> {
        Self::with_enumeration_cap(bound, crate::canon::DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_enumeration_cap(
        bound: usize,
        enumeration_cap: usize,
    ) -> Result<Self, DigraphError> {
        let mut seen = std::collections::HashSet::new();
        let mut keyed = Vec::new();
        for g in enumerate_digraphs(bound, enumeration_cap)? {
            let core = core_of(&g);
            let (form, key) = canonical_form(&core)?;
            if seen.insert(key) {
                keyed.push((key, form));
            }
        }
        keyed.sort_by_key(|(key, _)| *key);
        let universe: Vec<Digraph> = keyed.into_iter().map(|(_, g)| g).collect();
        let prefix_len = (0..=bound)
            .map(|b| universe.iter().filter(|g| g.vertex_count() <= b).count())
            .collect();
        Ok(DigraphBackend {
            bound,
            universe,
            prefix_len,
        })
    }

    /// Canonical core representative of an arbitrary digraph.
    pub fn normalize(&self, g: &Digraph) -> Digraph {
        let core = core_of(g);
        if core.vertex_count() <= MAX_CANON_VERTICES {
            canonical_form(&core).expect("within canon cap").0
        } else {
            core
        }
    }
}

impl OrderBackend for DigraphBackend {
    type Elem = Digraph;

    fn leq(&self, a: &Digraph, b: &Digraph) -> bool {
        hom_exists(a, b)
    }

    fn join(&self, a: &Digraph, b: &Digraph) -> Digraph {
        self.normalize(&coproduct(&[a.clone(), b.clone()]))
    }

    fn meet(&self, a: &Digraph, b: &Digraph) -> Digraph {
        self.normalize(&product(a, b))
    }

    fn bottom(&self) -> Digraph {
        Digraph::empty()
    }

    fn top(&self) -> Digraph {
        Digraph::looped_vertex()
    }

    fn components(&self, a: &Digraph) -> Result<Vec<Digraph>, EngineError> {
        let core = self.normalize(a);
        let mut comps: Vec<Digraph> = weak_components(&core)
            .iter()
            .map(|c| self.normalize(c))
            .collect();
        comps.sort();
        comps.dedup();
        Ok(comps)
    }

    fn universe(&self, bound: usize) -> &[Digraph] {
        &self.universe[..self.prefix_len[bound.min(self.bound)]]
    }

    fn max_bound(&self) -> usize {
        self.bound
    }

    fn report_bound(&self, requested: usize) -> usize {
        requested.min(self.bound)
    }

    fn is_exhaustive(&self) -> bool {
        false
    }

    /// Built-in catalog: the right dual of the directed path with `k` arcs
    /// is the transitive tournament on `k` vertices (the empty digraph for
    /// the one-vertex path).
    fn right_dual_hint(&self, l: &Digraph) -> Option<Digraph> {
        let core = self.normalize(l);
        let n = core.vertex_count();
        if n == 0 || core.arc_count() != n - 1 || n > MAX_CANON_VERTICES {
            return None;
        }
        let path = Digraph::path(n - 1);
        if canonical_form(&core).ok()?.1 != canonical_form(&path).ok()?.1 {
            return None;
        }
        if n == 1 {
            Some(Digraph::empty())
        } else {
            Some(Digraph::transitive_tournament(n - 1).expect("n - 1 >= 1"))
        }
    }

    /// A digraph class is a weak left dual exactly when its core is an
    /// orientation of a forest.
    fn structural_wld(&self, a: &Digraph) -> Option<bool> {
        Some(is_forest_orientation(&core_of(a)))
    }

    /// Lies below some weak left dual iff it maps into a forest, and a
    /// witness forest never needs more vertices than the core itself.
    fn structural_down_wld(&self, a: &Digraph) -> Option<bool> {
        let core = self.normalize(a);
        if core.vertex_count() > self.bound {
            return None;
        }
        Some(
            self.universe(core.vertex_count())
                .iter()
                .filter(|f| is_forest_orientation(f))
                .any(|f| hom_exists(&core, f)),
        )
    }

    fn render(&self, a: &Digraph) -> String {
        let arcs: Vec<String> = a.arcs().iter().map(|&(u, v)| format!("{u}->{v}")).collect();
        format!("{{n={}; {}}}", a.vertex_count(), arcs.join(" "))
    }

    fn elem_json(&self, a: &Digraph) -> serde_json::Value {
        json!({
            "n": a.vertex_count(),
            "arcs": a.arcs(),
        })
    }
}
