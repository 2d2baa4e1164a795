//! Corpus diagrams, independent oracles and generators shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;

use colored_kh::diagrams::{cable, GaussLetter, GaussPhrase, PdCode};
use colored_kh::nano::{HomotopyData, Nanophrase, SignProfile};
use colored_kh::LaurentPoly;
use rand::Rng;

pub mod suites;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn load(name: &str) -> PdCode {
    let text = std::fs::read_to_string(data_dir().join(format!("{name}.json"))).unwrap();
    PdCode::parse_json(&text).unwrap()
}

pub fn unknot() -> PdCode {
    load("unknot")
}

pub fn right_trefoil() -> PdCode {
    load("trefoil_right")
}

pub fn left_trefoil() -> PdCode {
    load("trefoil_left")
}

pub fn figure_eight() -> PdCode {
    load("figure_eight")
}

pub fn hopf() -> PdCode {
    load("hopf")
}

/// The bundled diagrams.
pub fn base_corpus() -> Vec<(&'static str, PdCode)> {
    vec![
        ("unknot", unknot()),
        ("right trefoil", right_trefoil()),
        ("left trefoil", left_trefoil()),
        ("figure eight", figure_eight()),
        ("hopf", hopf()),
    ]
}

/// Bundled diagrams plus blackboard cables of at most 12 crossings.
pub fn corpus() -> Vec<(String, PdCode)> {
    let mut out: Vec<(String, PdCode)> = base_corpus()
        .into_iter()
        .map(|(n, d)| (n.to_string(), d))
        .collect();
    out.push((
        "right trefoil 2-cable".into(),
        cable(&right_trefoil(), &[2]),
    ));
    out.push(("hopf (2,1)-cable".into(), cable(&hopf(), &[2, 1])));
    out.push(("hopf (2,2)-cable".into(), cable(&hopf(), &[2, 2])));
    out.push(("hopf (3,1)-cable".into(), cable(&hopf(), &[3, 1])));
    out.push(("unknot 3-cable".into(), cable(&unknot(), &[3])));
    out
}

// ---------------------------------------------------------------------------
// Braid closures

/// Sign of `σᵢ` (left strand over) in the library's crossing convention.
pub const SIGMA_SIGN: i8 = 1;

/// Signed Gauss phrase of the closure of a braid word. Generator `±(i+1)` is
/// `σᵢ^{±1}` acting on positions `i, i+1`; `σᵢ` takes the left strand over.
pub fn braid_gauss(strands: usize, word: &[i32]) -> GaussPhrase {
    // occurrence lists per starting strand: (letter, passes over)
    let mut paths: Vec<Vec<(usize, bool)>> = vec![Vec::new(); strands];
    let mut at: Vec<usize> = (0..strands).collect();
    let mut signs = Vec::new();
    for (t, &g) in word.iter().enumerate() {
        let i = g.unsigned_abs() as usize - 1;
        assert!(i + 1 < strands, "generator out of range");
        let positive = g > 0;
        let (left, right) = (at[i], at[i + 1]);
        paths[left].push((t, positive));
        paths[right].push((t, !positive));
        signs.push(if positive { SIGMA_SIGN } else { -SIGMA_SIGN });
        at.swap(i, i + 1);
    }
    // strand that ends at position p continues as the strand starting at p
    let mut end_of = vec![0; strands];
    for (p, &s) in at.iter().enumerate() {
        end_of[s] = p;
    }
    let mut seen = vec![false; strands];
    let mut words: Vec<Vec<(usize, bool)>> = Vec::new();
    for s0 in 0..strands {
        if seen[s0] {
            continue;
        }
        let mut w = Vec::new();
        let mut s = s0;
        while !seen[s] {
            seen[s] = true;
            w.extend(paths[s].iter().copied());
            s = end_of[s];
        }
        words.push(w);
    }
    let mut first_over = vec![None; word.len()];
    for w in &words {
        for &(l, over) in w {
            first_over[l].get_or_insert(over);
        }
    }
    let letters = (0..word.len())
        .map(|t| GaussLetter {
            name: format!("X{t}"),
            sign: signs[t],
            first_over: first_over[t].unwrap(),
        })
        .collect();
    let words = words
        .into_iter()
        .map(|w| w.into_iter().map(|(l, _)| l).collect())
        .collect();
    GaussPhrase::new(letters, words).unwrap()
}

pub fn braid(strands: usize, word: &[i32]) -> PdCode {
    braid_gauss(strands, word).to_pd().unwrap()
}

// ---------------------------------------------------------------------------
// Oracles

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Occurrences `(word, position)` of each letter.
fn occurrences(words: &[Vec<usize>], letters: usize) -> Vec<[(usize, usize); 2]> {
    let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); letters];
    for (wi, w) in words.iter().enumerate() {
        for (k, &l) in w.iter().enumerate() {
            occ[l].push((wi, k));
        }
    }
    occ.into_iter().map(|v| [v[0], v[1]]).collect()
}

/// Loop count of a smoothing read directly off the Gauss words. Segment
/// `k` of a word runs from occurrence `k` to `k + 1`; `oriented[x]` picks
/// the smoothing at letter `x`.
pub fn gauss_loops(words: &[Vec<usize>], letters: usize, oriented: &[bool]) -> usize {
    let mut base = Vec::new();
    let mut total = 0;
    for w in words {
        base.push(total);
        total += w.len();
    }
    // node 2s = start of segment s, 2s + 1 = its end
    let mut dsu = Dsu::new(2 * total);
    for s in 0..total {
        dsu.union(2 * s, 2 * s + 1);
    }
    let seg = |(w, k): (usize, usize)| base[w] + k;
    let arriving = |(w, k): (usize, usize)| base[w] + (k + words[w].len() - 1) % words[w].len();
    for (x, [o1, o2]) in occurrences(words, letters).into_iter().enumerate() {
        let (in1, out1, in2, out2) = (arriving(o1), seg(o1), arriving(o2), seg(o2));
        if oriented[x] {
            dsu.union(2 * in1 + 1, 2 * out2);
            dsu.union(2 * in2 + 1, 2 * out1);
        } else {
            dsu.union(2 * in1 + 1, 2 * in2 + 1);
            dsu.union(2 * out1, 2 * out2);
        }
    }
    dsu.classes() + words.iter().filter(|w| w.is_empty()).count()
}

/// Unnormalized Jones polynomial by the Kauffman state sum over the Gauss
/// words: `(−1)^{n₋} q^{n₊−2n₋} Σ_s (−q)^{|s|} (q + q⁻¹)^{loops(s)}`, where
/// the 0-smoothing is the oriented one at positive crossings.
pub fn gauss_bracket(g: &GaussPhrase) -> LaurentPoly {
    let n = g.letters().len();
    let signs: Vec<i8> = g.letters().iter().map(|l| l.sign).collect();
    let n_minus = signs.iter().filter(|&&s| s < 0).count() as i64;
    let n_plus = n as i64 - n_minus;
    let mut by_count: HashMap<(u32, usize), i64> = HashMap::new();
    for state in 0u64..1 << n {
        let oriented: Vec<bool> = (0..n)
            .map(|x| ((state >> x) & 1 == 0) == (signs[x] > 0))
            .collect();
        *by_count
            .entry((state.count_ones(), gauss_loops(g.words(), n, &oriented)))
            .or_default() += 1;
    }
    let circle = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
    let mut total = LaurentPoly::zero();
    for ((r, loops), count) in by_count {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        total = &total + &circle.pow(loops as u32).shift(r as i64).scale(sign * count);
    }
    let sign = if n_minus % 2 == 0 { 1 } else { -1 };
    total.shift(n_plus - 2 * n_minus).scale(sign)
}

/// `S₀ = 1`, `S₁ = q + q⁻¹`, `S_{k+1} = (q + q⁻¹) S_k − S_{k−1}`.
pub fn chebyshev(n: usize) -> LaurentPoly {
    let x = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
    let (mut a, mut b) = (LaurentPoly::one(), x.clone());
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        let c = &(&x * &b) - &a;
        a = b;
        b = c;
    }
    b
}

/// Planarity by exhaustive search: tries every choice of local rotation at
/// the crossings and accepts when one matching the code's handedness (up to
/// reflecting the plane) gives a sphere.
pub fn planar_by_search(g: &GaussPhrase) -> bool {
    let n = g.letters().len();
    let handed: Vec<bool> = g
        .letters()
        .iter()
        .map(|l| (l.sign > 0) == l.first_over)
        .collect();
    let planar = planar_rotations(g.words(), n);
    let flipped: Vec<bool> = handed.iter().map(|h| !h).collect();
    planar.contains(&handed) || planar.contains(&flipped)
}

/// Every handedness vector whose rotation system has genus zero.
pub fn planar_rotations(words: &[Vec<usize>], n: usize) -> BTreeSet<Vec<bool>> {
    let mut out = BTreeSet::new();
    for bits in 0u64..1 << n {
        let h: Vec<bool> = (0..n).map(|x| (bits >> x) & 1 == 1).collect();
        if genus_zero(words, n, &h) {
            out.insert(h);
        }
    }
    out
}

fn genus_zero(words: &[Vec<usize>], n: usize, handed: &[bool]) -> bool {
    let mut base = Vec::new();
    let mut edges = 0;
    for w in words {
        base.push(edges);
        edges += w.len();
    }
    if n == 0 {
        return true;
    }
    // darts: 2e = tail of edge e (leaving an occurrence), 2e + 1 = head
    let occ = occurrences(words, n);
    let mut rot = vec![0usize; 2 * edges];
    let mut dsu = Dsu::new(n);
    for (x, &[o1, o2]) in occ.iter().enumerate() {
        let out = |(w, k): (usize, usize)| 2 * (base[w] + k);
        let inn =
            |(w, k): (usize, usize)| 2 * (base[w] + (k + words[w].len() - 1) % words[w].len()) + 1;
        // counterclockwise order at the vertex
        let cyc = if handed[x] {
            [out(o1), out(o2), inn(o1), inn(o2)]
        } else {
            [out(o1), inn(o2), inn(o1), out(o2)]
        };
        for i in 0..4 {
            rot[cyc[i]] = cyc[(i + 1) % 4];
        }
    }
    for w in words {
        for k in 0..w.len() {
            dsu.union(w[k], w[(k + 1) % w.len()]);
        }
    }
    // faces: follow the edge to its other dart, then turn by the rotation
    let mut seen = vec![false; 2 * edges];
    let mut faces = 0;
    for d in 0..2 * edges {
        if seen[d] {
            continue;
        }
        faces += 1;
        let mut e = d;
        while !seen[e] {
            seen[e] = true;
            e = rot[e ^ 1];
        }
    }
    let comps = {
        let used: BTreeSet<usize> = words.iter().flatten().copied().collect();
        let roots: BTreeSet<usize> = used.into_iter().map(|x| dsu.find(x)).collect();
        roots.len() as i64
    };
    n as i64 - edges as i64 + faces as i64 == 2 * comps
}

/// All signed Gauss phrases with the given word lengths whose letters are
/// numbered by first occurrence.
pub fn all_gauss_phrases(lengths: &[usize]) -> Vec<GaussPhrase> {
    let total: usize = lengths.iter().sum();
    assert!(total % 2 == 0);
    let n = total / 2;
    let mut flat = Vec::new();
    let mut seqs = Vec::new();
    fill(&mut flat, &mut vec![0; n], 0, n, &mut seqs);
    let mut out = Vec::new();
    for seq in seqs {
        let mut words = Vec::new();
        let mut at = 0;
        for &l in lengths {
            words.push(seq[at..at + l].to_vec());
            at += l;
        }
        for signs in 0u32..1 << n {
            for over in 0u32..1 << n {
                let letters = (0..n)
                    .map(|x| GaussLetter {
                        name: format!("X{x}"),
                        sign: if (signs >> x) & 1 == 1 { 1 } else { -1 },
                        first_over: (over >> x) & 1 == 1,
                    })
                    .collect();
                out.push(GaussPhrase::new(letters, words.clone()).unwrap());
            }
        }
    }
    out
}

fn fill(
    cur: &mut Vec<usize>,
    used: &mut Vec<u8>,
    next: usize,
    n: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if cur.len() == 2 * n {
        out.push(cur.clone());
        return;
    }
    for l in 0..n.min(next + 1) {
        if used[l] < 2 {
            used[l] += 1;
            cur.push(l);
            fill(cur, used, next.max(l + 1), n, out);
            cur.pop();
            used[l] -= 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Random nanophrase instances

/// Commuting involutions on `n` symbols built from random orbits of size 1,
/// 2 and 4. `kinds` restricts which 2-orbits appear: swapped by τ only, by
/// ν only, or by both.
pub fn random_involutions<R: Rng>(
    rng: &mut R,
    n: usize,
    tau_moves: bool,
    nu_moves: bool,
) -> (Vec<usize>, Vec<usize>) {
    let mut tau: Vec<usize> = (0..n).collect();
    let mut nu = tau.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let mut i = 0;
    while i < n {
        let left = n - i;
        let k = rng.gen_range(0..5);
        if k == 4 && left >= 4 && tau_moves && nu_moves {
            let (a, b, c, d) = (perm[i], perm[i + 1], perm[i + 2], perm[i + 3]);
            tau[a] = b;
            tau[b] = a;
            tau[c] = d;
            tau[d] = c;
            nu[a] = c;
            nu[c] = a;
            nu[b] = d;
            nu[d] = b;
            i += 4;
        } else if (1..=3).contains(&k) && left >= 2 {
            let (a, b) = (perm[i], perm[i + 1]);
            let swap_tau = k != 2 && tau_moves;
            let swap_nu = k != 1 && nu_moves;
            if swap_tau {
                tau[a] = b;
                tau[b] = a;
            }
            if swap_nu {
                nu[a] = b;
                nu[b] = a;
            }
            i += 2;
        } else {
            i += 1;
        }
    }
    (tau, nu)
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

/// A random phrase with 1 to `max_letters` letters spread over one or two
/// words.
pub fn random_phrase<R: Rng>(rng: &mut R, alphabet: usize, max_letters: usize) -> Nanophrase {
    let letters = rng.gen_range(1..=max_letters);
    let words = rng.gen_range(1..=2);
    let mut occ: Vec<usize> = (0..letters).flat_map(|l| [l, l]).collect();
    for i in (1..occ.len()).rev() {
        let j = rng.gen_range(0..=i);
        occ.swap(i, j);
    }
    let cut = if words == 2 {
        rng.gen_range(0..=occ.len())
    } else {
        occ.len()
    };
    let mut ws = vec![occ[..cut].to_vec()];
    if words == 2 {
        ws.push(occ[cut..].to_vec());
    }
    let proj: Vec<usize> = (0..letters).map(|_| rng.gen_range(0..alphabet)).collect();
    Nanophrase::from_dense(ws, &proj).unwrap()
}

fn random_subset<R: Rng>(rng: &mut R, from: impl Iterator<Item = usize>) -> BTreeSet<usize> {
    from.filter(|_| rng.gen_bool(0.5)).collect()
}

/// A random valid profile, if one is found in a few attempts.
pub fn random_profile<R: Rng>(rng: &mut R, data: &HomotopyData) -> Option<SignProfile> {
    for _ in 0..50 {
        let l = random_subset(rng, 0..data.len());
        let l1 = random_subset(rng, l.clone().into_iter());
        if let Ok(p) = SignProfile::new(data, l, l1) {
            return Some(p);
        }
    }
    None
}

/// A random nonempty `L` with `L ∩ f(L) = ∅`.
pub fn random_representatives<R: Rng>(rng: &mut R, f: &[usize]) -> Option<BTreeSet<usize>> {
    for _ in 0..50 {
        let l = random_subset(rng, 0..f.len());
        if !l.is_empty() && l.iter().all(|&x| !l.contains(&f[x])) {
            return Some(l);
        }
    }
    None
}
