//! Lee's canonical generators on the oriented resolution.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::diagrams::{PdCode, SmoothingState};
use crate::error::{Error, Result};
use crate::khovanov::{Enhanced, KhovanovComplex};
use crate::lee::complex::LeeComplex;

/// `𝔰_o` and `𝔰_ō` as integral vectors on enhanced states.
#[derive(Clone, Debug)]
pub struct CanonicalGenerators {
    /// The oriented resolution.
    pub state: SmoothingState,
    /// Per Seifert circle: `true` for `a = x + 1`, `false` for `b = x − 1`
    /// (labels of `𝔰_o`; `𝔰_ō` swaps them).
    pub labels: Vec<bool>,
    pub s_o: BTreeMap<Enhanced, i64>,
    pub s_obar: BTreeMap<Enhanced, i64>,
}

/// The smoothing following the orientation: 0 at positive crossings, 1 at
/// negative ones.
pub fn oriented_resolution(pd: &PdCode) -> SmoothingState {
    let mut s = 0u64;
    for x in 0..pd.crossing_count() {
        if pd.sign(x) < 0 {
            s |= 1 << x;
        }
    }
    SmoothingState(s)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Nesting depth and counterclockwise flag of every Seifert circle.
///
/// Regions of the resolution are faces of the diagram merged across each
/// crossing. Each connected piece is drawn with its largest face outside;
/// pieces and free loops sit side by side.
pub fn seifert_circles(pd: &PdCode, kc: &KhovanovComplex) -> Result<Vec<(u32, bool)>> {
    let state = oriented_resolution(pd);
    let loops = kc.cube().loops(state);
    let faces = pd.faces();
    let mut face_of: HashMap<(usize, usize), usize> = HashMap::new();
    for (f, corners) in faces.iter().enumerate() {
        for &c in corners {
            face_of.insert(c, f);
        }
    }
    let mut uf = UnionFind((0..faces.len()).collect());
    for x in 0..pd.crossing_count() {
        let (p, q) = if state.bit(x) == 0 { (1, 3) } else { (0, 2) };
        uf.union(face_of[&(x, p)], face_of[&(x, q)]);
    }

    let free = pd.free_loops().count();
    let traced = loops.count - free;
    let mut sides: Vec<Option<(usize, usize)>> = vec![None; traced];
    let pieces = pd.pieces();
    for (pos, a) in pd.arcs().enumerate() {
        let (x, p) = pd.ends(a).tail;
        let l = loops.of_arc[pos] as usize;
        let left = uf.find(face_of[&(x, p)]);
        let right = uf.find(face_of[&(x, (p + 3) % 4)]);
        match sides[l] {
            None => sides[l] = Some((left, right)),
            Some(s) if s == (left, right) => {}
            Some(_) => {
                return Err(Error::Internal(format!(
                    "Seifert circle {l} has inconsistent sides"
                )))
            }
        }
    }

    // adjacency of regions through circles
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for s in sides.iter().flatten() {
        adj.entry(s.0).or_default().push(s.1);
        adj.entry(s.1).or_default().push(s.0);
    }
    let mut dist: BTreeMap<usize, u32> = BTreeMap::new();
    for piece in 0..pieces.count {
        let outer = faces
            .iter()
            .enumerate()
            .filter(|(_, c)| pieces.of_crossing[c[0].0] == piece)
            .max_by_key(|(f, c)| (c.len(), std::cmp::Reverse(*f)))
            .map(|(f, _)| uf.find(f))
            .expect("every piece has faces");
        let mut queue = VecDeque::from([outer]);
        dist.insert(outer, 0);
        while let Some(r) = queue.pop_front() {
            let d = dist[&r];
            for &n in adj.get(&r).map(Vec::as_slice).unwrap_or(&[]) {
                if !dist.contains_key(&n) {
                    dist.insert(n, d + 1);
                    queue.push_back(n);
                }
            }
        }
    }

    let mut out = Vec::with_capacity(loops.count);
    for (l, s) in sides.iter().enumerate() {
        let (left, right) =
            s.ok_or_else(|| Error::Internal(format!("Seifert circle {l} has no arcs")))?;
        let (dl, dr) = (dist[&left], dist[&right]);
        if dl.abs_diff(dr) != 1 {
            return Err(Error::Internal(format!(
                "Seifert circle {l} does not separate its sides"
            )));
        }
        out.push((dl.min(dr), dl > dr));
    }
    for (_, f) in pd.free_loops() {
        out.push((f.level, f.ccw));
    }
    Ok(out)
}

/// `(x + 1)` or `(x − 1)` per loop, expanded on enhanced states of `state`.
fn tensor(state: SmoothingState, labels: &[bool]) -> BTreeMap<Enhanced, i64> {
    let mut out = BTreeMap::new();
    for minus in 0..1u64 << labels.len() {
        let mut c = 1i64;
        for (l, &a) in labels.iter().enumerate() {
            if !a && (minus >> l) & 1 == 0 {
                c = -c;
            }
        }
        out.insert(Enhanced { state, minus }, c);
    }
    out
}

/// Labels each Seifert circle `a` when depth plus (0 if counterclockwise,
/// else 1) is even, `b` otherwise, and checks that the result is a cycle.
pub fn canonical_generators_in(lee: &LeeComplex, pd: &PdCode) -> Result<CanonicalGenerators> {
    let kc = lee.khovanov();
    let state = oriented_resolution(pd);
    let circles = seifert_circles(pd, kc)?;
    let labels: Vec<bool> = circles
        .iter()
        .map(|&(depth, ccw)| (depth + u32::from(!ccw)) % 2 == 0)
        .collect();
    let swapped: Vec<bool> = labels.iter().map(|a| !a).collect();
    let s_o = tensor(state, &labels);
    let s_obar = tensor(state, &swapped);
    for (name, v) in [("𝔰_o", &s_o), ("𝔰_ō", &s_obar)] {
        if !lee.apply(v).is_empty() {
            return Err(Error::Internal(format!("{name} is not a cycle")));
        }
    }
    Ok(CanonicalGenerators {
        state,
        labels,
        s_o,
        s_obar,
    })
}

pub fn canonical_generators(pd: &PdCode) -> Result<CanonicalGenerators> {
    canonical_generators_in(&LeeComplex::new(pd), pd)
}
