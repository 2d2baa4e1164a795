//! Planar-diagram codes.
//!
//! A crossing is a 4-tuple of arc labels listed counterclockwise starting at
//! the incoming under-strand. Slot 0 is the incoming under-strand and slot 2
//! the outgoing one. The over-strand runs 3 → 1 at a positive crossing and
//! 1 → 3 at a negative one.
//!
//! The same data also carries virtual diagrams (built from non-realizable
//! Gauss phrases): the tuple order then defines a rotation system on an
//! abstract surface instead of the plane. [`PdCode::is_planar`] tells the
//! two apart.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Arc = u32;

/// Slot index inside a crossing tuple.
pub type Slot = usize;

pub const UNDER_IN: Slot = 0;
pub const UNDER_OUT: Slot = 2;

/// Whether slot `slot` of a crossing with sign `sign` is an outgoing end.
pub fn slot_is_out(slot: Slot, sign: i8) -> bool {
    match slot {
        0 => false,
        2 => true,
        1 => sign > 0,
        3 => sign < 0,
        _ => unreachable!("slot out of range"),
    }
}

/// A crossingless component. `nest` groups concentric loops, `level` counts
/// loops of the same nest enclosing this one, `ccw` records the drawing
/// direction under the component's orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeLoop {
    pub nest: u32,
    pub level: u32,
    pub ccw: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    /// Arcs in traversal order.
    Traced(Vec<Arc>),
    Free(FreeLoop),
}

impl Component {
    pub fn arcs(&self) -> &[Arc] {
        match self {
            Component::Traced(a) => a,
            Component::Free(_) => &[],
        }
    }
}

/// Where a component comes in the component order: the traced component
/// through a given arc, or a free loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentSeed {
    Through(Arc),
    Free(FreeLoop),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcEnds {
    /// Crossing and slot the arc leaves from.
    pub tail: (usize, Slot),
    /// Crossing and slot the arc enters.
    pub head: (usize, Slot),
}

/// An oriented link diagram.
#[derive(Clone, Debug)]
pub struct PdCode {
    crossings: Vec<[Arc; 4]>,
    signs: Vec<i8>,
    components: Vec<Component>,
    ends: BTreeMap<Arc, ArcEnds>,
    arc_component: BTreeMap<Arc, usize>,
}

impl PartialEq for PdCode {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings
            && self.signs == other.signs
            && self.components == other.components
    }
}

impl Eq for PdCode {}

#[derive(Serialize, Deserialize)]
struct PdJson {
    crossings: Vec<[i64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    orientations: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    components: Option<usize>,
}

impl PdCode {
    /// The crossingless diagram with no components.
    pub fn empty() -> Self {
        Self::from_parts(vec![], vec![], vec![]).expect("empty diagram is valid")
    }

    /// `count` unnested, counterclockwise free loops.
    pub fn unlink(count: usize) -> Self {
        let seeds = (0..count)
            .map(|i| {
                ComponentSeed::Free(FreeLoop {
                    nest: i as u32,
                    level: 0,
                    ccw: true,
                })
            })
            .collect();
        Self::from_parts(vec![], vec![], seeds).expect("unlink is valid")
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// Builds a diagram, deriving crossing signs from the under-strand
    /// directions when `signs` is `None`. Traced components are ordered by
    /// their smallest arc label, then `extra_free` free loops are appended.
    pub fn new(
        crossings: Vec<[Arc; 4]>,
        signs: Option<Vec<i8>>,
        extra_free: usize,
    ) -> Result<Self> {
        let signs = match signs {
            Some(s) => s,
            None => derive_signs(&crossings)?,
        };
        let ends = arc_ends(&crossings, &signs)?;
        let mut seeds = Vec::new();
        let mut seen = BTreeSet::new();
        for &a in ends.keys() {
            if seen.contains(&a) {
                continue;
            }
            let comp = trace(&crossings, &ends, a);
            seen.extend(comp.iter().copied());
            seeds.push(ComponentSeed::Through(a));
        }
        let nest0 = 0;
        for i in 0..extra_free {
            seeds.push(ComponentSeed::Free(FreeLoop {
                nest: nest0 + i as u32,
                level: 0,
                ccw: true,
            }));
        }
        Self::from_parts(crossings, signs, seeds)
    }

    /// Builds a diagram with an explicit component order. Every traced
    /// component must be named by exactly one seed; a traced component is
    /// listed starting from its seed arc.
    pub fn from_parts(
        crossings: Vec<[Arc; 4]>,
        signs: Vec<i8>,
        seeds: Vec<ComponentSeed>,
    ) -> Result<Self> {
        if signs.len() != crossings.len() {
            return Err(Error::InvalidDiagram(format!(
                "{} signs for {} crossings",
                signs.len(),
                crossings.len()
            )));
        }
        if let Some(s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidDiagram(format!(
                "crossing sign {s} is not ±1"
            )));
        }
        let ends = arc_ends(&crossings, &signs)?;
        let mut components = Vec::with_capacity(seeds.len());
        let mut arc_component = BTreeMap::new();
        for seed in seeds {
            match seed {
                ComponentSeed::Through(a) => {
                    if !ends.contains_key(&a) {
                        return Err(Error::InvalidDiagram(format!(
                            "seed arc {a} is not in the diagram"
                        )));
                    }
                    if arc_component.contains_key(&a) {
                        return Err(Error::InvalidDiagram(format!(
                            "component through arc {a} listed twice"
                        )));
                    }
                    let arcs = trace(&crossings, &ends, a);
                    for &x in &arcs {
                        arc_component.insert(x, components.len());
                    }
                    components.push(Component::Traced(arcs));
                }
                ComponentSeed::Free(f) => components.push(Component::Free(f)),
            }
        }
        if arc_component.len() != ends.len() {
            return Err(Error::InvalidDiagram(
                "some traced component has no seed".into(),
            ));
        }
        Ok(Self {
            crossings,
            signs,
            components,
            ends,
            arc_component,
        })
    }

    /// Parses the PD JSON format:
    /// `{"crossings": [[a,b,c,d],…], "orientations": [±1,…], "components": n}`.
    ///
    /// `orientations` (optional) lists the crossing signs; when present they
    /// must agree with the under-strand directions. `components` (optional)
    /// is the total component count; components beyond the traced ones are
    /// crossingless loops. The diagram must be planar.
    pub fn parse_json(text: &str) -> Result<Self> {
        let raw: PdJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut crossings = Vec::with_capacity(raw.crossings.len());
        for t in &raw.crossings {
            let mut c = [0; 4];
            for (k, &v) in t.iter().enumerate() {
                c[k] = Arc::try_from(v).map_err(|_| {
                    Error::Parse(format!("arc label {v} is not a small nonnegative integer"))
                })?;
            }
            crossings.push(c);
        }
        let signs = match raw.orientations {
            None => None,
            Some(v) => Some(
                v.iter()
                    .map(|&s| match s {
                        1 => Ok(1i8),
                        -1 => Ok(-1i8),
                        _ => Err(Error::Parse(format!("orientation entry {s} is not ±1"))),
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        check_labels(&crossings)?;
        let traced = {
            let probe = PdCode::new(crossings.clone(), signs.clone(), 0)?;
            probe.components.len()
        };
        let total = raw.components.unwrap_or(traced);
        if total < traced {
            return Err(Error::InvalidDiagram(format!(
                "declared {total} components but the crossings trace {traced}"
            )));
        }
        let pd = PdCode::new(crossings, signs, total - traced)?;
        if !pd.is_planar() {
            return Err(Error::InvalidDiagram("crossing data is not planar".into()));
        }
        Ok(pd)
    }

    pub fn to_json(&self) -> String {
        let raw = PdJson {
            crossings: self.crossings.iter().map(|c| c.map(i64::from)).collect(),
            orientations: Some(self.signs.iter().map(|&s| s as i64).collect()),
            components: Some(self.components.len()),
        };
        serde_json::to_string(&raw).expect("PD serialisation")
    }

    pub fn crossings(&self) -> &[[Arc; 4]] {
        &self.crossings
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, x: usize) -> i8 {
        self.signs[x]
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn free_loops(&self) -> impl Iterator<Item = (usize, FreeLoop)> + '_ {
        self.components
            .iter()
            .enumerate()
            .filter_map(|(i, c)| match c {
                Component::Free(f) => Some((i, *f)),
                _ => None,
            })
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.ends.keys().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.ends.len()
    }

    pub fn ends(&self, a: Arc) -> ArcEnds {
        self.ends[&a]
    }

    pub fn component_of_arc(&self, a: Arc) -> usize {
        self.arc_component[&a]
    }

    /// Component passing under at crossing `x`.
    pub fn under_component(&self, x: usize) -> usize {
        self.arc_component[&self.crossings[x][UNDER_IN]]
    }

    /// Component passing over at crossing `x`.
    pub fn over_component(&self, x: usize) -> usize {
        self.arc_component[&self.crossings[x][1]]
    }

    /// Number of positive and negative crossings.
    pub fn sign_counts(&self) -> (usize, usize) {
        let pos = self.signs.iter().filter(|&&s| s > 0).count();
        (pos, self.signs.len() - pos)
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// Sum of signs of crossings where component `c` meets itself.
    pub fn self_writhe(&self, c: usize) -> i64 {
        (0..self.crossings.len())
            .filter(|&x| self.under_component(x) == c && self.over_component(x) == c)
            .map(|x| self.signs[x] as i64)
            .sum()
    }

    /// Linking number of two distinct components.
    pub fn linking_number(&self, c1: usize, c2: usize) -> i64 {
        let twice: i64 = (0..self.crossings.len())
            .filter(|&x| {
                let (u, o) = (self.under_component(x), self.over_component(x));
                (u == c1 && o == c2) || (u == c2 && o == c1)
            })
            .map(|x| self.signs[x] as i64)
            .sum();
        twice / 2
    }

    /// Mirror image: every crossing switched. Under-strand and over-strand
    /// trade roles, so each tuple is rotated to start at the new incoming
    /// under-strand and the sign flips.
    pub fn mirror(&self) -> PdCode {
        let mut crossings = Vec::with_capacity(self.crossings.len());
        for (x, c) in self.crossings.iter().enumerate() {
            let s = self.signs[x];
            // new under-strand is the old over-strand; its incoming slot is
            // 3 for a positive crossing and 1 for a negative one
            let start = if s > 0 { 3 } else { 1 };
            crossings.push([
                c[start],
                c[(start + 1) % 4],
                c[(start + 2) % 4],
                c[(start + 3) % 4],
            ]);
        }
        let signs = self.signs.iter().map(|&s| -s).collect();
        let seeds = self.seeds();
        PdCode::from_parts(crossings, signs, seeds).expect("mirror of a valid diagram")
    }

    /// Reverses the orientation of every component in `which`.
    pub fn reverse_components(&self, which: &BTreeSet<usize>) -> PdCode {
        let mut crossings = self.crossings.clone();
        let mut signs = self.signs.clone();
        for x in 0..crossings.len() {
            let u = which.contains(&self.under_component(x));
            let o = which.contains(&self.over_component(x));
            if u {
                let c = crossings[x];
                crossings[x] = [c[2], c[3], c[0], c[1]];
            }
            if u != o {
                signs[x] = -signs[x];
            }
        }
        let seeds = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| match c {
                Component::Traced(arcs) => {
                    if which.contains(&i) {
                        // reversed traversal starts with the last arc
                        ComponentSeed::Through(*arcs.last().expect("traced component has arcs"))
                    } else {
                        ComponentSeed::Through(arcs[0])
                    }
                }
                Component::Free(f) => {
                    let mut f = *f;
                    if which.contains(&i) {
                        f.ccw = !f.ccw;
                    }
                    ComponentSeed::Free(f)
                }
            })
            .collect();
        PdCode::from_parts(crossings, signs, seeds).expect("reversal of a valid diagram")
    }

    /// Seeds reproducing the current component order.
    pub fn seeds(&self) -> Vec<ComponentSeed> {
        self.components
            .iter()
            .map(|c| match c {
                Component::Traced(arcs) => ComponentSeed::Through(arcs[0]),
                Component::Free(f) => ComponentSeed::Free(*f),
            })
            .collect()
    }

    /// Relabels arcs to `1..=2c` in component traversal order.
    pub fn normalized_labels(&self) -> PdCode {
        let mut relabel = BTreeMap::new();
        for comp in &self.components {
            for &a in comp.arcs() {
                let next = relabel.len() as Arc + 1;
                relabel.insert(a, next);
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| c.map(|a| relabel[&a]))
            .collect();
        let seeds = self
            .components
            .iter()
            .map(|c| match c {
                Component::Traced(arcs) => ComponentSeed::Through(relabel[&arcs[0]]),
                Component::Free(f) => ComponentSeed::Free(*f),
            })
            .collect();
        PdCode::from_parts(crossings, self.signs.clone(), seeds)
            .expect("relabelling preserves validity")
    }

    /// Face count of the rotation system, per connected piece of the
    /// crossing graph, as `(crossings, faces)` pairs.
    pub fn piece_faces(&self) -> Vec<(usize, usize)> {
        let pieces = self.pieces();
        let faces = self.faces();
        let mut out = vec![(0usize, 0usize); pieces.count];
        for x in 0..self.crossings.len() {
            out[pieces.of_crossing[x]].0 += 1;
        }
        for face in &faces {
            let (x, _) = face[0];
            out[pieces.of_crossing[x]].1 += 1;
        }
        out
    }

    /// True when every connected piece has Euler characteristic 2, i.e. the
    /// rotation system embeds in the sphere.
    pub fn is_planar(&self) -> bool {
        self.piece_faces()
            .iter()
            .all(|&(v, f)| v as i64 - 2 * v as i64 + f as i64 == 2)
    }

    /// Faces of the rotation system as cycles of corners `(crossing, slot)`;
    /// corner `(x, p)` is the region between slots `p` and `p+1`.
    pub fn faces(&self) -> Vec<Vec<(usize, Slot)>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for x in 0..self.crossings.len() {
            for p in 0..4 {
                if seen.contains(&(x, p)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut cx, mut cp) = (x, p);
                loop {
                    seen.insert((cx, cp));
                    face.push((cx, cp));
                    // leave along slot cp+1, arrive at the other end of that arc
                    let slot = (cp + 1) % 4;
                    let (nx, nq) = self.other_end(cx, slot);
                    // the corner on the same side at the far crossing
                    cx = nx;
                    cp = nq;
                    if (cx, cp) == (x, p) {
                        break;
                    }
                }
                out.push(face);
            }
        }
        out
    }

    /// The opposite end of the arc at `(x, slot)`.
    pub fn other_end(&self, x: usize, slot: Slot) -> (usize, Slot) {
        let a = self.crossings[x][slot];
        let e = self.ends[&a];
        if e.tail == (x, slot) {
            e.head
        } else {
            e.tail
        }
    }

    /// Connected pieces of the crossing graph (free loops excluded).
    pub fn pieces(&self) -> Pieces {
        let n = self.crossings.len();
        let mut of_crossing = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if of_crossing[start] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            of_crossing[start] = count;
            while let Some(x) = queue.pop_front() {
                for slot in 0..4 {
                    let (y, _) = self.other_end(x, slot);
                    if of_crossing[y] == usize::MAX {
                        of_crossing[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        Pieces { count, of_crossing }
    }
}

#[derive(Clone, Debug)]
pub struct Pieces {
    pub count: usize,
    pub of_crossing: Vec<usize>,
}

fn check_labels(crossings: &[[Arc; 4]]) -> Result<()> {
    let mut count: BTreeMap<Arc, usize> = BTreeMap::new();
    for c in crossings {
        for &a in c {
            *count.entry(a).or_default() += 1;
        }
    }
    if let Some((a, n)) = count.iter().find(|(_, &n)| n != 2) {
        return Err(Error::InvalidDiagram(format!(
            "arc {a} appears {n} times, expected 2"
        )));
    }
    Ok(())
}

fn arc_ends(crossings: &[[Arc; 4]], signs: &[i8]) -> Result<BTreeMap<Arc, ArcEnds>> {
    check_labels(crossings)?;
    let mut tails: BTreeMap<Arc, (usize, Slot)> = BTreeMap::new();
    let mut heads: BTreeMap<Arc, (usize, Slot)> = BTreeMap::new();
    for (x, c) in crossings.iter().enumerate() {
        for (p, &a) in c.iter().enumerate() {
            let side = if slot_is_out(p, signs[x]) {
                &mut tails
            } else {
                &mut heads
            };
            if side.insert(a, (x, p)).is_some() {
                return Err(Error::Orientation(format!(
                    "arc {a} is {} at both ends",
                    if slot_is_out(p, signs[x]) {
                        "outgoing"
                    } else {
                        "incoming"
                    }
                )));
            }
        }
    }
    Ok(tails
        .into_iter()
        .map(|(a, tail)| {
            (
                a,
                ArcEnds {
                    tail,
                    head: heads[&a],
                },
            )
        })
        .collect())
}

fn trace(crossings: &[[Arc; 4]], ends: &BTreeMap<Arc, ArcEnds>, start: Arc) -> Vec<Arc> {
    let mut arcs = vec![start];
    let mut a = start;
    loop {
        let (x, q) = ends[&a].head;
        a = crossings[x][(q + 2) % 4];
        if a == start {
            return arcs;
        }
        arcs.push(a);
    }
}

/// Recovers crossing signs from the fixed under-strand directions by
/// propagating the in/out constraint along arcs. Over-strands left
/// undetermined (components with no under-passes) default to a positive
/// sign at their lowest-indexed crossing.
fn derive_signs(crossings: &[[Arc; 4]]) -> Result<Vec<i8>> {
    check_labels(crossings)?;
    let n = crossings.len();
    let mut occ: BTreeMap<Arc, Vec<(usize, Slot)>> = BTreeMap::new();
    for (x, c) in crossings.iter().enumerate() {
        for (p, &a) in c.iter().enumerate() {
            occ.entry(a).or_default().push((x, p));
        }
    }
    // out(x, p) expressed as (fixed value) or (crossing var, negated)
    enum Out {
        Fixed(bool),
        Var(usize, bool),
    }
    let out_of = |x: usize, p: Slot| match p {
        0 => Out::Fixed(false),
        2 => Out::Fixed(true),
        1 => Out::Var(x, false),
        _ => Out::Var(x, true),
    };
    // value[x] = Some(true) for a positive crossing
    let mut value: Vec<Option<bool>> = vec![None; n];
    // parity edges: s_x xor s_y = parity
    let mut adj: Vec<Vec<(usize, bool)>> = vec![vec![]; n];
    let mut forced: Vec<(usize, bool)> = Vec::new();
    for (a, o) in &occ {
        let (e1, e2) = (o[0], o[1]);
        match (out_of(e1.0, e1.1), out_of(e2.0, e2.1)) {
            (Out::Fixed(f1), Out::Fixed(f2)) => {
                if f1 == f2 {
                    return Err(Error::Orientation(format!(
                        "arc {a} joins two under-strand ends of the same direction"
                    )));
                }
            }
            (Out::Fixed(f), Out::Var(x, neg)) | (Out::Var(x, neg), Out::Fixed(f)) => {
                // out = s_x xor neg must equal !f
                forced.push((x, !f ^ neg));
            }
            (Out::Var(x, nx), Out::Var(y, ny)) => {
                // (s_x ^ nx) xor (s_y ^ ny) = true
                let parity = !(nx ^ ny);
                adj[x].push((y, parity));
                adj[y].push((x, parity));
            }
        }
    }
    let propagate = |start: usize, v: bool, value: &mut Vec<Option<bool>>| -> Result<()> {
        let mut queue = VecDeque::from([(start, v)]);
        while let Some((x, v)) = queue.pop_front() {
            match value[x] {
                Some(old) if old != v => {
                    return Err(Error::Orientation(format!(
                        "crossing {x} would need both signs"
                    )));
                }
                Some(_) => continue,
                None => {
                    value[x] = Some(v);
                    for &(y, p) in &adj[x] {
                        queue.push_back((y, v ^ p));
                    }
                }
            }
        }
        Ok(())
    };
    for (x, v) in forced {
        propagate(x, v, &mut value)?;
    }
    for x in 0..n {
        if value[x].is_none() {
            propagate(x, true, &mut value)?;
        }
    }
    Ok(value
        .into_iter()
        .map(|v| if v.unwrap() { 1 } else { -1 })
        .collect())
}
