//! Blackboard cabling.
//!
//! Copy `t` of a strand runs `t` steps to the left of the strand's
//! direction. A crossing of an under-strand with `m_u` copies and an
//! over-strand with `m_o` copies becomes an `m_u × m_o` grid; each grid
//! crossing has the local picture and sign of the original one.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::diagrams::pd::{Arc, Component, ComponentSeed, FreeLoop, PdCode, UNDER_IN, UNDER_OUT};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Label {
    External(Arc, usize),
    UnderInner(usize, usize, usize),
    OverInner(usize, usize, usize),
}

struct Labels {
    ids: HashMap<Label, usize>,
    parent: Vec<usize>,
}

impl Labels {
    fn id(&mut self, l: Label) -> usize {
        if let Some(&i) = self.ids.get(&l) {
            return i;
        }
        let i = self.parent.len();
        self.parent.push(i);
        self.ids.insert(l, i);
        i
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Replaces component `i` by `m[i]` parallel copies, all oriented like the
/// original. `m[i] = 0` deletes the component. Components of the result are
/// listed component-major, copy-minor (copy 0 first).
pub fn cable(pd: &PdCode, m: &[usize]) -> PdCode {
    cable_with_bands(pd, m).0
}

/// The cable plus, for each component, the labels of the copies of its
/// first arc (copy order; empty when the copies carry no crossings).
fn cable_with_bands(pd: &PdCode, m: &[usize]) -> (PdCode, Vec<Vec<Arc>>) {
    assert_eq!(
        m.len(),
        pd.component_count(),
        "one multiplicity per component"
    );
    let mut labels = Labels {
        ids: HashMap::new(),
        parent: Vec::new(),
    };
    let mut grid: Vec<([usize; 4], i8)> = Vec::new();

    for (x, c) in pd.crossings().iter().enumerate() {
        let sign = pd.sign(x);
        let mu = m[pd.under_component(x)];
        let mo = m[pd.over_component(x)];
        let (uin, uout) = (c[UNDER_IN], c[UNDER_OUT]);
        let (oin, oout) = if sign > 0 { (c[3], c[1]) } else { (c[1], c[3]) };
        if mo == 0 {
            for t in 0..mu {
                let (a, b) = (
                    labels.id(Label::External(uin, t)),
                    labels.id(Label::External(uout, t)),
                );
                labels.union(a, b);
            }
        }
        if mu == 0 {
            for s in 0..mo {
                let (a, b) = (
                    labels.id(Label::External(oin, s)),
                    labels.id(Label::External(oout, s)),
                );
                labels.union(a, b);
            }
        }
        if mu == 0 || mo == 0 {
            continue;
        }
        let under_order: Vec<usize> = if sign > 0 {
            (0..mo).collect()
        } else {
            (0..mo).rev().collect()
        };
        let over_order: Vec<usize> = if sign > 0 {
            (0..mu).rev().collect()
        } else {
            (0..mu).collect()
        };
        let mut under_pos = vec![0; mo];
        for (k, &s) in under_order.iter().enumerate() {
            under_pos[s] = k;
        }
        let mut over_pos = vec![0; mu];
        for (k, &t) in over_order.iter().enumerate() {
            over_pos[t] = k;
        }
        for t in 0..mu {
            for &s in &under_order {
                let ku = under_pos[s];
                let ko = over_pos[t];
                let u_in = if ku == 0 {
                    Label::External(uin, t)
                } else {
                    Label::UnderInner(x, t, ku - 1)
                };
                let u_out = if ku + 1 == mo {
                    Label::External(uout, t)
                } else {
                    Label::UnderInner(x, t, ku)
                };
                let o_in = if ko == 0 {
                    Label::External(oin, s)
                } else {
                    Label::OverInner(x, s, ko - 1)
                };
                let o_out = if ko + 1 == mu {
                    Label::External(oout, s)
                } else {
                    Label::OverInner(x, s, ko)
                };
                let [ui, uo, oi, oo] = [u_in, u_out, o_in, o_out].map(|l| labels.id(l));
                let tuple = if sign > 0 {
                    [ui, oo, uo, oi]
                } else {
                    [ui, oi, uo, oo]
                };
                grid.push((tuple, sign));
            }
        }
    }

    let mut resolved: Vec<([usize; 4], i8)> = grid
        .iter()
        .map(|&(c, s)| (c.map(|l| labels.find(l)), s))
        .collect();
    let used: BTreeSet<usize> = resolved
        .iter()
        .flat_map(|(c, _)| c.iter().copied())
        .collect();
    let compact: BTreeMap<usize, Arc> = used
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i as Arc + 1))
        .collect();
    for (c, _) in resolved.iter_mut() {
        *c = c.map(|l| compact[&l] as usize);
    }

    let mut next_nest = pd.free_loops().map(|(_, f)| f.nest + 1).max().unwrap_or(0);
    let mut seeds = Vec::new();
    let mut bands = vec![Vec::new(); pd.component_count()];
    for (i, comp) in pd.components().iter().enumerate() {
        let mi = m[i];
        match comp {
            Component::Free(f) => {
                for t in 0..mi {
                    let inner = if f.ccw { t } else { mi - 1 - t } as u32;
                    seeds.push(ComponentSeed::Free(FreeLoop {
                        nest: f.nest,
                        level: f.level * mi as u32 + inner,
                        ccw: f.ccw,
                    }));
                }
            }
            Component::Traced(arcs) => {
                let nest = next_nest;
                let mut became_free = false;
                for t in 0..mi {
                    let root = {
                        let id = labels.id(Label::External(arcs[0], t));
                        labels.find(id)
                    };
                    match compact.get(&root) {
                        Some(&a) => {
                            seeds.push(ComponentSeed::Through(a));
                            bands[i].push(a);
                        }
                        None => {
                            became_free = true;
                            seeds.push(ComponentSeed::Free(FreeLoop {
                                nest,
                                level: t as u32,
                                ccw: true,
                            }));
                        }
                    }
                }
                if became_free {
                    next_nest += 1;
                }
            }
        }
    }
    let crossings = resolved.iter().map(|(c, _)| c.map(|l| l as Arc)).collect();
    let signs = resolved.iter().map(|&(_, s)| s).collect();
    (
        PdCode::from_parts(crossings, signs, seeds).expect("cable of a valid diagram is valid"),
        bands,
    )
}

/// Cable of the 0-framed diagram. Equivalent to `cable(normalize_framing(pd), m)`
/// up to isotopy, but each framing kink is replaced by a full twist of the
/// parallel copies (`m(m−1)` crossings instead of `m²`): component `i` gets
/// `−self_writhe(i)` full twists on the copies of its first arc.
pub fn zero_framed_cable(pd: &PdCode, m: &[usize]) -> PdCode {
    let (cabled, bands) = cable_with_bands(pd, m);
    let mut twists = Vec::new();
    for (i, band) in bands.iter().enumerate() {
        let w = pd.self_writhe(i);
        if w != 0 && band.len() >= 2 {
            twists.push((band.clone(), -w));
        }
    }
    if twists.is_empty() {
        return cabled;
    }
    insert_full_twists(&cabled, &twists)
}

/// Inserts `k` full twists on each band of parallel, equally oriented arcs
/// (listed in copy order, copy `t` being `t` steps left of copy 0), just
/// before the arcs' heads.
fn insert_full_twists(pd: &PdCode, twists: &[(Vec<Arc>, i64)]) -> PdCode {
    let mut crossings: Vec<[Arc; 4]> = pd.crossings().to_vec();
    let mut signs: Vec<i8> = pd.signs().to_vec();
    let mut next = pd.arcs().max().unwrap_or(0) + 1;
    for (band, k) in twists {
        let n = band.len();
        // positions left to right
        let mut pos: Vec<Arc> = band.iter().rev().copied().collect();
        let heads: Vec<(usize, usize)> = pos.iter().map(|&a| pd.ends(a).head).collect();
        let sign: i8 = if *k > 0 { 1 } else { -1 };
        for _ in 0..k.unsigned_abs() * n as u64 {
            for p in 0..n - 1 {
                let (li, ri) = (pos[p], pos[p + 1]);
                let (lo, ro) = (next, next + 1);
                next += 2;
                // corners counterclockwise: li, ri, ro, lo; the strand entering
                // at the left leaves at the right
                let tuple = if sign > 0 {
                    [ri, ro, lo, li]
                } else {
                    [li, ri, ro, lo]
                };
                crossings.push(tuple);
                signs.push(sign);
                pos[p] = lo;
                pos[p + 1] = ro;
            }
        }
        for (idx, &(x, slot)) in heads.iter().enumerate() {
            crossings[x][slot] = pos[idx];
        }
    }
    PdCode::from_parts(crossings, signs, pd.seeds()).expect("twisted cable is valid")
}

/// Reverses every odd-numbered copy, so the copies of each component
/// alternate original, opposite, original, … in push-off order.
pub fn orient_cable(cabled: &PdCode, m: &[usize]) -> PdCode {
    let mut which = BTreeSet::new();
    let mut idx = 0;
    for &mi in m {
        for t in 0..mi {
            if t % 2 == 1 {
                which.insert(idx);
            }
            idx += 1;
        }
    }
    assert_eq!(
        idx,
        cabled.component_count(),
        "multiplicities do not match the cable"
    );
    cabled.reverse_components(&which)
}

/// Expected crossing count of `cable(pd, m)`.
pub fn cable_crossing_count(pd: &PdCode, m: &[usize]) -> usize {
    (0..pd.crossing_count())
        .map(|x| m[pd.under_component(x)] * m[pd.over_component(x)])
        .sum()
}
