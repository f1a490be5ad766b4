//! Finitely presented categories and bounded word problems.
//!
//! A category is presented by named objects, named arrow generators, and a
//! finite list of path relations. Morphisms are composable generator paths;
//! composition is concatenation, so associativity holds by construction and
//! the identity on an object is the empty path at that object.
//!
//! Relations induce a congruence on parallel paths. The word problem for
//! such presentations is undecidable in general, so `normalize_path` and
//! `paths_equal` run a breadth-first closure that is cut off after
//! `depth_limit` levels and report `Inconclusive` when the bound is the only
//! reason nothing more can be said. A definite answer is produced only when
//! an equivalence class has been enumerated in full.

use std::collections::BTreeSet;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Errors from presentation construction and path algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("invalid presentation: {reason}")]
    InvalidPresentation { reason: String },
    #[error("invalid path: {reason}")]
    InvalidPath { reason: String },
    #[error("paths do not compose: first ends at {first_end} but second starts at {second_start}")]
    NonComposable {
        first_end: ObjectId,
        second_start: ObjectId,
    },
    #[error("paths are not parallel: endpoints ({lhs_src} -> {lhs_tgt}) vs ({rhs_src} -> {rhs_tgt})")]
    NotParallel {
        lhs_src: ObjectId,
        lhs_tgt: ObjectId,
        rhs_src: ObjectId,
        rhs_tgt: ObjectId,
    },
    #[error("square corners do not match: {reason}")]
    CornerMismatch { reason: String },
    #[error("malformed composition table: {reason}")]
    MalformedTable { reason: String },
}

/// Returns true when `s` is usable as a name: nonempty, alphanumeric or `_`.
pub fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Name of an object in a presentation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(String);

impl ObjectId {
    pub fn new(name: impl Into<String>) -> Self {
        ObjectId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An arrow generator with its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowGen {
    pub name: String,
    pub src: ObjectId,
    pub tgt: ObjectId,
}

/// A composable sequence of generator names. The empty sequence is the
/// identity and requires `src == tgt`.
///
/// Paths are plain data; whether a path is well formed over a given
/// presentation is checked by [`CategoryPresentation::validate_path`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub src: ObjectId,
    pub tgt: ObjectId,
    pub gens: Vec<String>,
}

impl Path {
    pub fn identity(obj: ObjectId) -> Self {
        Path {
            src: obj.clone(),
            tgt: obj,
            gens: Vec::new(),
        }
    }

    pub fn of_gen(gen: &ArrowGen) -> Self {
        Path {
            src: gen.src.clone(),
            tgt: gen.tgt.clone(),
            gens: vec![gen.name.clone()],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.gens.is_empty()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            write!(f, "id({})", self.src)
        } else {
            f.write_str(&self.gens.join("."))
        }
    }
}

/// Composes two paths end to end.
pub fn compose_path(p: &Path, q: &Path) -> Result<Path, CatError> {
    if p.tgt != q.src {
        return Err(CatError::NonComposable {
            first_end: p.tgt.clone(),
            second_start: q.src.clone(),
        });
    }
    let mut gens = p.gens.clone();
    gens.extend(q.gens.iter().cloned());
    Ok(Path {
        src: p.src.clone(),
        tgt: q.tgt.clone(),
        gens,
    })
}

/// A finite presentation: objects, arrow generators, and parallel path
/// relations. Construction validates every component, so a value of this
/// type is always internally consistent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryPresentation {
    objects: BTreeSet<ObjectId>,
    arrows: BTreeMap<String, ArrowGen>,
    relations: Vec<(Path, Path)>,
}

impl CategoryPresentation {
    pub fn new(
        objects: impl IntoIterator<Item = ObjectId>,
        arrows: impl IntoIterator<Item = ArrowGen>,
        relations: impl IntoIterator<Item = (Path, Path)>,
    ) -> Result<Self, CatError> {
        let mut object_set = BTreeSet::new();
        for obj in objects {
            if !is_token(obj.as_str()) {
                return Err(CatError::InvalidPresentation {
                    reason: format!("object name {:?} is not a token", obj.as_str()),
                });
            }
            if !object_set.insert(obj.clone()) {
                return Err(CatError::InvalidPresentation {
                    reason: format!("duplicate object {obj}"),
                });
            }
        }
        let mut arrow_map = BTreeMap::new();
        for gen in arrows {
            if !is_token(&gen.name) {
                return Err(CatError::InvalidPresentation {
                    reason: format!("arrow name {:?} is not a token", gen.name),
                });
            }
            for end in [&gen.src, &gen.tgt] {
                if !object_set.contains(end) {
                    return Err(CatError::InvalidPresentation {
                        reason: format!("arrow {} uses undeclared object {end}", gen.name),
                    });
                }
            }
            if arrow_map.insert(gen.name.clone(), gen.clone()).is_some() {
                return Err(CatError::InvalidPresentation {
                    reason: format!("duplicate arrow {}", gen.name),
                });
            }
        }
        let pres = CategoryPresentation {
            objects: object_set,
            arrows: arrow_map,
            relations: Vec::new(),
        };
        let mut checked = Vec::new();
        for (lhs, rhs) in relations {
            pres.validate_path(&lhs)?;
            pres.validate_path(&rhs)?;
            if lhs.src != rhs.src || lhs.tgt != rhs.tgt {
                return Err(CatError::NotParallel {
                    lhs_src: lhs.src,
                    lhs_tgt: lhs.tgt,
                    rhs_src: rhs.src,
                    rhs_tgt: rhs.tgt,
                });
            }
            checked.push((lhs, rhs));
        }
        Ok(CategoryPresentation {
            relations: checked,
            ..pres
        })
    }

    /// A presentation with no relations over the given generators.
    pub fn free(
        objects: impl IntoIterator<Item = ObjectId>,
        arrows: impl IntoIterator<Item = ArrowGen>,
    ) -> Result<Self, CatError> {
        Self::new(objects, arrows, Vec::new())
    }

    pub fn objects(&self) -> impl Iterator<Item = &ObjectId> {
        self.objects.iter()
    }

    pub fn arrows(&self) -> impl Iterator<Item = &ArrowGen> {
        self.arrows.values()
    }

    pub fn relations(&self) -> &[(Path, Path)] {
        &self.relations
    }

    pub fn has_object(&self, obj: &ObjectId) -> bool {
        self.objects.contains(obj)
    }

    pub fn arrow(&self, name: &str) -> Option<&ArrowGen> {
        self.arrows.get(name)
    }

    /// Checks that `p` is a composable chain of declared generators from
    /// `p.src` to `p.tgt` (for the empty path, that `src == tgt` and the
    /// object is declared).
    pub fn validate_path(&self, p: &Path) -> Result<(), CatError> {
        if !self.objects.contains(&p.src) {
            return Err(CatError::InvalidPath {
                reason: format!("undeclared source object {}", p.src),
            });
        }
        if !self.objects.contains(&p.tgt) {
            return Err(CatError::InvalidPath {
                reason: format!("undeclared target object {}", p.tgt),
            });
        }
        let mut cursor = p.src.clone();
        for name in &p.gens {
            let gen = self.arrows.get(name).ok_or_else(|| CatError::InvalidPath {
                reason: format!("undeclared arrow {name}"),
            })?;
            if gen.src != cursor {
                return Err(CatError::InvalidPath {
                    reason: format!("arrow {name} starts at {} but the path is at {cursor}", gen.src),
                });
            }
            cursor = gen.tgt.clone();
        }
        if cursor != p.tgt {
            return Err(CatError::InvalidPath {
                reason: format!("path ends at {cursor} but claims target {}", p.tgt),
            });
        }
        Ok(())
    }

    /// Objects visited along a generator word starting at `src`, including
    /// both endpoints. Every generator must be declared.
    fn stations_of(&self, src: &ObjectId, gens: &[String]) -> Vec<ObjectId> {
        let mut out = Vec::with_capacity(gens.len() + 1);
        out.push(src.clone());
        for name in gens {
            out.push(self.arrows[name].tgt.clone());
        }
        out
    }

    /// All single-step rewrites of `gens` (one relation side replaced by the
    /// other at one position). `src` is the common source of the class.
    fn rewrite_neighbors(&self, src: &ObjectId, gens: &[String]) -> Vec<Vec<String>> {
        let mut out = Vec::new();
        // For empty-pattern relations the anchor object must be checked
        // explicitly; for nonempty patterns the generator names pin it.
        let mut stations: Option<Vec<ObjectId>> = None;
        for (lhs, rhs) in &self.relations {
            for (from, to) in [(lhs, rhs), (rhs, lhs)] {
                let k = from.gens.len();
                if k > gens.len() {
                    continue;
                }
                for i in 0..=(gens.len() - k) {
                    if gens[i..i + k] != from.gens[..] {
                        continue;
                    }
                    if k == 0 {
                        let st =
                            stations.get_or_insert_with(|| self.stations_of(src, gens));
                        if st[i] != from.src {
                            continue;
                        }
                    }
                    let mut next = Vec::with_capacity(gens.len() - k + to.gens.len());
                    next.extend_from_slice(&gens[..i]);
                    next.extend(to.gens.iter().cloned());
                    next.extend_from_slice(&gens[i + k..]);
                    if next != gens {
                        out.push(next);
                    }
                }
            }
        }
        out
    }
}

/// Outcome of a bounded normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalization {
    /// The equivalence class was enumerated in full; this is its minimum
    /// under length-then-lexicographic order.
    Normal(Path),
    /// The class was not exhausted within the depth bound.
    Inconclusive { explored: usize },
}

/// Three-valued answer of a bounded equality search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriState {
    Equal,
    /// Both equivalence classes were enumerated in full and are disjoint.
    NotEqualWithinBound,
    Inconclusive,
}

/// Breadth-first closure of one path under single-step rewrites, expanded
/// level by level. `exhausted` becomes true when a level adds nothing new.
struct RewriteClosure<'a> {
    pres: &'a CategoryPresentation,
    src: ObjectId,
    seen: BTreeSet<Vec<String>>,
    frontier: VecDeque<Vec<String>>,
    levels_accepted: usize,
    exhausted: bool,
}

impl<'a> RewriteClosure<'a> {
    fn start(pres: &'a CategoryPresentation, p: &Path) -> Self {
        let mut seen = BTreeSet::new();
        seen.insert(p.gens.clone());
        let mut frontier = VecDeque::new();
        frontier.push_back(p.gens.clone());
        RewriteClosure {
            pres,
            src: p.src.clone(),
            seen,
            frontier,
            levels_accepted: 0,
            exhausted: false,
        }
    }

    /// Expands one level. Returns the words that were new, leaving them as
    /// the next frontier. Sets `exhausted` when the level was empty.
    fn expand_level(&mut self) -> Vec<Vec<String>> {
        let mut fresh = Vec::new();
        let mut next = VecDeque::new();
        for word in self.frontier.iter() {
            for neighbor in self.pres.rewrite_neighbors(&self.src, word) {
                if self.seen.insert(neighbor.clone()) {
                    fresh.push(neighbor.clone());
                    next.push_back(neighbor);
                }
            }
        }
        if fresh.is_empty() {
            self.exhausted = true;
            self.frontier.clear();
        } else {
            self.levels_accepted += 1;
            self.frontier = next;
        }
        fresh
    }

    fn minimum(&self, src: &ObjectId, tgt: &ObjectId) -> Path {
        let gens = self
            .seen
            .iter()
            .min_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())))
            .expect("closure always contains the start word")
            .clone();
        Path {
            src: src.clone(),
            tgt: tgt.clone(),
            gens,
        }
    }
}

/// Normalizes `p` modulo the presentation's relations.
///
/// The closure is expanded breadth-first. If some level adds no new words
/// the class is complete and its minimum under length-then-lexicographic
/// order is returned as `Normal`; `depth_limit` caps how many growing levels
/// are accepted before giving up with `Inconclusive`. A `depth_limit` of 0
/// therefore still decides paths whose class is a fixed point of rewriting.
pub fn normalize_path(
    pres: &CategoryPresentation,
    p: &Path,
    depth_limit: usize,
) -> Result<Normalization, CatError> {
    pres.validate_path(p)?;
    let mut closure = RewriteClosure::start(pres, p);
    loop {
        closure.expand_level();
        if closure.exhausted {
            return Ok(Normalization::Normal(closure.minimum(&p.src, &p.tgt)));
        }
        if closure.levels_accepted > depth_limit {
            return Ok(Normalization::Inconclusive {
                explored: closure.seen.len(),
            });
        }
    }
}

/// Decides equality of two parallel paths modulo relations, within a bound.
///
/// Both closures are grown breadth-first in lockstep. `Equal` as soon as the
/// closures meet; `NotEqualWithinBound` when both classes have been
/// enumerated in full without meeting; `Inconclusive` when at least one
/// closure hit `depth_limit` first.
pub fn paths_equal(
    pres: &CategoryPresentation,
    p: &Path,
    q: &Path,
    depth_limit: usize,
) -> Result<TriState, CatError> {
    pres.validate_path(p)?;
    pres.validate_path(q)?;
    if p.src != q.src || p.tgt != q.tgt {
        return Err(CatError::NotParallel {
            lhs_src: p.src.clone(),
            lhs_tgt: p.tgt.clone(),
            rhs_src: q.src.clone(),
            rhs_tgt: q.tgt.clone(),
        });
    }
    if p.gens == q.gens {
        return Ok(TriState::Equal);
    }
    let mut left = RewriteClosure::start(pres, p);
    let mut right = RewriteClosure::start(pres, q);
    if left.seen.contains(&q.gens) {
        return Ok(TriState::Equal);
    }
    loop {
        let left_done = left.exhausted || left.levels_accepted >= depth_limit;
        let right_done = right.exhausted || right.levels_accepted >= depth_limit;
        if left.exhausted && right.exhausted {
            return Ok(TriState::NotEqualWithinBound);
        }
        if left_done && right_done {
            return Ok(TriState::Inconclusive);
        }
        if !left_done {
            for word in left.expand_level() {
                if right.seen.contains(&word) {
                    return Ok(TriState::Equal);
                }
            }
        }
        if !right_done {
            for word in right.expand_level() {
                if left.seen.contains(&word) {
                    return Ok(TriState::Equal);
                }
            }
        }
    }
}

/// Checks that four paths close up into a square `a;b = c;d` with matching
/// corners, then decides commutativity within the bound.
///
/// The corners are: `a` across the top, `b` down the right, `c` down the
/// left, `d` across the bottom.
pub fn check_commutative_square(
    pres: &CategoryPresentation,
    a: &Path,
    b: &Path,
    c: &Path,
    d: &Path,
    depth_limit: usize,
) -> Result<TriState, CatError> {
    for p in [a, b, c, d] {
        pres.validate_path(p)?;
    }
    if a.src != c.src {
        return Err(CatError::CornerMismatch {
            reason: format!("top starts at {} but left starts at {}", a.src, c.src),
        });
    }
    if a.tgt != b.src {
        return Err(CatError::CornerMismatch {
            reason: format!("top ends at {} but right starts at {}", a.tgt, b.src),
        });
    }
    if c.tgt != d.src {
        return Err(CatError::CornerMismatch {
            reason: format!("left ends at {} but bottom starts at {}", c.tgt, d.src),
        });
    }
    if b.tgt != d.tgt {
        return Err(CatError::CornerMismatch {
            reason: format!("right ends at {} but bottom ends at {}", b.tgt, d.tgt),
        });
    }
    let top_then_right = compose_path(a, b)?;
    let left_then_bottom = compose_path(c, d)?;
    paths_equal(pres, &top_then_right, &left_then_bottom, depth_limit)
}

/// A word normalized in a free commutative setting: atoms with multiplicity,
/// in canonical (lexicographic) atom order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativeWord {
    counts: BTreeMap<String, u64>,
}

impl CommutativeWord {
    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }
}

impl fmt::Display for CommutativeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for (atom, count) in &self.counts {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if *count == 1 {
                f.write_str(atom)?;
            } else {
                write!(f, "{atom}^{count}")?;
            }
        }
        Ok(())
    }
}

/// Collects a word of atoms into its commutative normal form. The result
/// depends only on the multiset of atoms, never on their order.
pub fn commutative_normalize<S: AsRef<str>>(word: &[S]) -> CommutativeWord {
    let mut counts = BTreeMap::new();
    for atom in word {
        *counts.entry(atom.as_ref().to_string()).or_insert(0) += 1;
    }
    CommutativeWord { counts }
}

/// An explicit finite composition table: arrows with endpoints, a chosen
/// identity arrow per object, and a total composite assignment on composable
/// pairs. Construction validates shape; the category axioms themselves are
/// checked separately so that violations can be reported, not just rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionTable {
    arrows: BTreeMap<String, (ObjectId, ObjectId)>,
    identities: BTreeMap<ObjectId, String>,
    composites: BTreeMap<(String, String), String>,
}

impl CompositionTable {
    pub fn new(
        arrows: impl IntoIterator<Item = (String, ObjectId, ObjectId)>,
        identities: impl IntoIterator<Item = (ObjectId, String)>,
        composites: impl IntoIterator<Item = ((String, String), String)>,
    ) -> Result<Self, CatError> {
        let mut arrow_map: BTreeMap<String, (ObjectId, ObjectId)> = BTreeMap::new();
        let mut objects: BTreeSet<ObjectId> = BTreeSet::new();
        for (name, src, tgt) in arrows {
            if !is_token(&name) {
                return Err(CatError::MalformedTable {
                    reason: format!("arrow name {name:?} is not a token"),
                });
            }
            objects.insert(src.clone());
            objects.insert(tgt.clone());
            if arrow_map.insert(name.clone(), (src, tgt)).is_some() {
                return Err(CatError::MalformedTable {
                    reason: format!("duplicate arrow {name}"),
                });
            }
        }
        let mut identity_map = BTreeMap::new();
        for (obj, name) in identities {
            let (src, tgt) = arrow_map.get(&name).ok_or_else(|| CatError::MalformedTable {
                reason: format!("identity of {obj} names unknown arrow {name}"),
            })?;
            if *src != obj || *tgt != obj {
                return Err(CatError::MalformedTable {
                    reason: format!("identity arrow {name} of {obj} is not an endomorphism of {obj}"),
                });
            }
            if identity_map.insert(obj.clone(), name).is_some() {
                return Err(CatError::MalformedTable {
                    reason: format!("two identities declared for {obj}"),
                });
            }
        }
        for obj in &objects {
            if !identity_map.contains_key(obj) {
                return Err(CatError::MalformedTable {
                    reason: format!("no identity declared for object {obj}"),
                });
            }
        }
        let mut composite_map = BTreeMap::new();
        for ((f, g), h) in composites {
            let (fs, ft) = arrow_map.get(&f).cloned().ok_or_else(|| CatError::MalformedTable {
                reason: format!("composite references unknown arrow {f}"),
            })?;
            let (gs, gt) = arrow_map.get(&g).cloned().ok_or_else(|| CatError::MalformedTable {
                reason: format!("composite references unknown arrow {g}"),
            })?;
            let (hs, ht) = arrow_map.get(&h).cloned().ok_or_else(|| CatError::MalformedTable {
                reason: format!("composite references unknown arrow {h}"),
            })?;
            if ft != gs {
                return Err(CatError::MalformedTable {
                    reason: format!("pair ({f}, {g}) is not composable: {ft} vs {gs}"),
                });
            }
            if hs != fs || ht != gt {
                return Err(CatError::MalformedTable {
                    reason: format!("composite {f};{g} = {h} has endpoints ({hs} -> {ht}), expected ({fs} -> {gt})"),
                });
            }
            if composite_map.insert((f.clone(), g.clone()), h).is_some() {
                return Err(CatError::MalformedTable {
                    reason: format!("duplicate composite entry for ({f}, {g})"),
                });
            }
        }
        // Totality: every composable pair must have an entry.
        for (f, (_, ft)) in &arrow_map {
            for (g, (gs, _)) in &arrow_map {
                if ft == gs && !composite_map.contains_key(&(f.clone(), g.clone())) {
                    return Err(CatError::MalformedTable {
                        reason: format!("missing composite for composable pair ({f}, {g})"),
                    });
                }
            }
        }
        Ok(CompositionTable {
            arrows: arrow_map,
            identities: identity_map,
            composites: composite_map,
        })
    }

    pub fn arrow_names(&self) -> impl Iterator<Item = &String> {
        self.arrows.keys()
    }

    fn compose(&self, f: &str, g: &str) -> Option<&String> {
        self.composites.get(&(f.to_string(), g.to_string()))
    }
}

/// One failed instance of an identity law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFailure {
    pub arrow: String,
    /// The identity arrow that failed to be neutral.
    pub identity: String,
    /// What the table produced instead of `arrow`.
    pub got: String,
}

/// One failed instance of associativity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityFailure {
    pub triple: (String, String, String),
    pub left_grouping: String,
    pub right_grouping: String,
}

/// Outcome of checking the category axioms on a composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub identity_failures: Vec<IdentityFailure>,
    pub associativity_failures: Vec<AssociativityFailure>,
}

impl AxiomReport {
    pub fn is_category(&self) -> bool {
        self.identity_failures.is_empty() && self.associativity_failures.is_empty()
    }
}

/// Exhaustively checks identity and associativity laws on the table.
/// Failures are reported in deterministic (sorted) order.
pub fn check_category_axioms(table: &CompositionTable) -> AxiomReport {
    let mut identity_failures = Vec::new();
    for (f, (src, tgt)) in &table.arrows {
        let id_src = &table.identities[src];
        let id_tgt = &table.identities[tgt];
        if let Some(got) = table.compose(id_src, f) {
            if got != f {
                identity_failures.push(IdentityFailure {
                    arrow: f.clone(),
                    identity: id_src.clone(),
                    got: got.clone(),
                });
            }
        }
        if let Some(got) = table.compose(f, id_tgt) {
            if got != f {
                identity_failures.push(IdentityFailure {
                    arrow: f.clone(),
                    identity: id_tgt.clone(),
                    got: got.clone(),
                });
            }
        }
    }
    let mut associativity_failures = Vec::new();
    for (f, (_, ft)) in &table.arrows {
        for (g, (gs, gt)) in &table.arrows {
            if ft != gs {
                continue;
            }
            for (h, (hs, _)) in &table.arrows {
                if gt != hs {
                    continue;
                }
                let fg = table.compose(f, g).expect("table is total");
                let gh = table.compose(g, h).expect("table is total");
                let left = table.compose(fg, h).expect("table is total");
                let right = table.compose(f, gh).expect("table is total");
                if left != right {
                    associativity_failures.push(AssociativityFailure {
                        triple: (f.clone(), g.clone(), h.clone()),
                        left_grouping: left.clone(),
                        right_grouping: right.clone(),
                    });
                }
            }
        }
    }
    AxiomReport {
        identity_failures,
        associativity_failures,
    }
}
