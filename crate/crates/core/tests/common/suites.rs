//! Checks shared by the per-area tests and the acceptance target. Each
//! returns `Err` with a description instead of panicking.

use std::collections::{BTreeSet, HashSet, VecDeque};

use colored_kh::colored::{colored_cable, colored_jones};
use colored_kh::diagrams::PdCode;
use colored_kh::khovanov::{kauffman_bracket_jones, khovanov_homology};
use colored_kh::lee::{s_knot, s_link, SLinkFormula};
use colored_kh::nano::{
    alpha_star, applicable_moves, apply_move, functor_v, homotopic, neighbors, sign_couple,
    to_gauss, HomotopyData, NanoDocument, Nanophrase, SignProfile, Verdict,
};
use colored_kh::{Budget, LaurentPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// ---------------------------------------------------------------------------
// Reidemeister moves

/// Scripted pairs of braid closures related by one Reidemeister move.
pub fn braid_move_pairs() -> Vec<(&'static str, (usize, Vec<i32>), (usize, Vec<i32>))> {
    vec![
        ("R2 on a kinked unknot", (2, vec![1]), (2, vec![1, 1, -1])),
        (
            "R2 on the trefoil",
            (2, vec![1, 1, 1]),
            (2, vec![1, -1, 1, 1, 1]),
        ),
        (
            "R2 on the left trefoil",
            (2, vec![-1, -1, -1]),
            (2, vec![-1, 1, -1, -1, -1]),
        ),
        (
            "R2 on the figure eight",
            (3, vec![1, -2, 1, -2]),
            (3, vec![1, 2, -2, -2, 1, -2]),
        ),
        (
            "R2 on the Hopf link",
            (2, vec![1, 1]),
            (2, vec![1, -1, 1, 1]),
        ),
        (
            "R2 across strands",
            (3, vec![1, 1, 1]),
            (3, vec![1, 2, -2, 1, 1]),
        ),
        ("R3 positive", (3, vec![1, 2, 1]), (3, vec![2, 1, 2])),
        ("R3 negative", (3, vec![-1, -2, -1]), (3, vec![-2, -1, -2])),
        ("R3 in a knot", (3, vec![1, 2, 1, 1]), (3, vec![2, 1, 2, 1])),
        ("R3 mixed", (3, vec![1, 2, -1]), (3, vec![-2, 1, 2])),
        (
            "R3 mixed in a knot",
            (3, vec![1, 2, -1, 2]),
            (3, vec![-2, 1, 2, 2]),
        ),
        (
            "R3 four strands",
            (4, vec![1, 2, 1, 3]),
            (4, vec![2, 1, 2, 3]),
        ),
        (
            "R3 after a twist",
            (3, vec![1, 1, 2, 1]),
            (3, vec![1, 2, 1, 2]),
        ),
        (
            "R1 positive on the trefoil",
            (2, vec![1, 1, 1]),
            (3, vec![1, 1, 1, 2]),
        ),
        (
            "R1 negative on the trefoil",
            (2, vec![1, 1, 1]),
            (3, vec![1, 1, 1, -2]),
        ),
        (
            "R1 on the figure eight",
            (3, vec![1, -2, 1, -2]),
            (4, vec![1, -2, 1, -2, 3]),
        ),
        ("R1 on the Hopf link", (2, vec![1, 1]), (3, vec![1, 1, -2])),
        ("R1 on the unknot", (1, vec![]), (2, vec![1])),
        ("R1 negative on the unknot", (1, vec![]), (2, vec![-1])),
        (
            "R1 on the left trefoil",
            (2, vec![-1, -1, -1]),
            (3, vec![-1, -1, -1, -2]),
        ),
    ]
}

/// Compares Khovanov homology, `s`, `J_1` and, when both cables have at
/// most 16 crossings, `J_2`. Returns whether `J_2` was compared.
pub fn same_invariants(name: &str, a: &PdCode, b: &PdCode) -> Result<bool, String> {
    let e = |x: colored_kh::Error| format!("{name}: {x}");
    ensure!(
        khovanov_homology(a).map_err(e)? == khovanov_homology(b).map_err(e)?,
        "{name}: Khovanov homology differs"
    );
    let (sa, sb) = if a.component_count() == 1 {
        (s_knot(a).map_err(e)?, s_knot(b).map_err(e)?)
    } else {
        (
            s_link(a, SLinkFormula::Mean).map_err(e)?,
            s_link(b, SLinkFormula::Mean).map_err(e)?,
        )
    };
    ensure!(sa == sb, "{name}: s differs ({sa} vs {sb})");
    let budget = Budget::default();
    let n1 = vec![1; a.component_count()];
    ensure!(
        colored_jones(a, &n1, &budget).map_err(e)? == colored_jones(b, &n1, &budget).map_err(e)?,
        "{name}: J_1 differs"
    );
    let n2 = vec![2; a.component_count()];
    let fits = |d: &PdCode| colored_cable(d, &n2).crossing_count() <= 16;
    if fits(a) && fits(b) {
        ensure!(
            colored_jones(a, &n2, &budget).map_err(e)?
                == colored_jones(b, &n2, &budget).map_err(e)?,
            "{name}: J_2 differs"
        );
        return Ok(true);
    }
    Ok(false)
}

/// Runs [`same_invariants`] on every scripted pair; returns the number of
/// pairs and how many of them also compared `J_2`.
pub fn scripted_moves() -> Result<(usize, usize), String> {
    let pairs = braid_move_pairs();
    let mut colored = 0;
    for (name, (s1, w1), (s2, w2)) in &pairs {
        colored += same_invariants(name, &braid(*s1, w1), &braid(*s2, w2))? as usize;
    }
    Ok((pairs.len(), colored))
}

// ---------------------------------------------------------------------------
// Functor suites

pub const INSTANCES: usize = 200;

#[derive(Debug, Default)]
pub struct Suite {
    pub instances: usize,
    pub moves: usize,
    pub failures: Vec<String>,
    pub max_depth: usize,
}

impl Suite {
    pub fn check(&self, name: &str) -> Result<(), String> {
        ensure!(
            self.instances == INSTANCES,
            "{name}: {} instances",
            self.instances
        );
        ensure!(
            self.failures.is_empty(),
            "{name}: {} of {} moves not matched, first {}",
            self.failures.len(),
            self.moves,
            self.failures[0]
        );
        ensure!(self.moves > 1000, "{name}: only {} moves", self.moves);
        Ok(())
    }
}

/// One random source instance: data, the functor, and its target data.
pub type Instance = (
    HomotopyData,
    Box<dyn Fn(&Nanophrase) -> Nanophrase>,
    HomotopyData,
);

/// For random instances and every single move `P → P′`, checks that the
/// images are homotopic in the target within depth 6 and length cap +4.
pub fn run_suite(
    seed: u64,
    mut instance: impl FnMut(&mut ChaCha8Rng) -> Option<Instance>,
) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Suite::default();
    while s.instances < INSTANCES {
        let Some((data, f, target)) = instance(&mut rng) else {
            continue;
        };
        s.instances += 1;
        let p = random_phrase(&mut rng, data.len(), 4);
        let fp = f(&p);
        for m in applicable_moves(&p, &data, p.length() + 4) {
            let q = apply_move(&p, &data, &m).unwrap();
            let fq = f(&q);
            s.moves += 1;
            match homotopic(&fp, &fq, &target, 6, 4).unwrap() {
                Verdict::Yes { depth } => s.max_depth = s.max_depth.max(depth),
                Verdict::NoWithinBound => s.failures.push(format!("{p:?} --{m:?}--> {q:?}")),
            }
        }
    }
    s
}

/// The `V_{L₁⊂L}` suite over random commuting involutions with `S♯`.
pub fn v_suite(seed: u64) -> Suite {
    run_suite(seed, |rng| {
        let n = rng.gen_range(1..=6);
        let (tau, nu) = random_involutions(rng, n, true, true);
        let data = HomotopyData::s_sharp(names(n), tau, nu).unwrap();
        let profile = random_profile(rng, &data)?;
        let d = data.clone();
        Some((
            data,
            Box::new(move |p: &Nanophrase| functor_v(p, &d, &profile).unwrap()) as _,
            alpha_star(),
        ))
    })
}

// ---------------------------------------------------------------------------
// Synchronized survival

pub fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn go(f: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = f.iter().position(Option::is_none) else {
            out.push(f.iter().map(|x| x.unwrap()).collect());
            return;
        };
        f[i] = Some(i);
        go(f, out);
        for j in i + 1..f.len() {
            if f[j].is_none() {
                f[i] = Some(j);
                f[j] = Some(i);
                go(f, out);
                f[j] = None;
            }
        }
        f[i] = None;
    }
    let mut out = Vec::new();
    go(&mut vec![None; n], &mut out);
    out
}

fn subsets(of: &[usize]) -> Vec<BTreeSet<usize>> {
    (0u32..1 << of.len())
        .map(|m| {
            of.iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

fn nondegenerate(c: (i8, i8)) -> bool {
    c.0 != 0 && c.1 != 0
}

#[derive(Debug, PartialEq, Eq)]
pub struct SurvivalCount {
    pub profiles: usize,
    pub h2_sites: usize,
    pub h3_sites: usize,
}

/// Over every `α` with `|α| ≤ max`, every commuting `(τ, ν)` and every valid
/// profile: the two letters of an H2 site, and the three of an H3 site with
/// a triple of `S♯`, are kept or deleted together.
pub fn synchronized_survival(max: usize) -> Result<SurvivalCount, String> {
    let mut count = SurvivalCount {
        profiles: 0,
        h2_sites: 0,
        h3_sites: 0,
    };
    for n in 1..=max {
        let all: Vec<usize> = (0..n).collect();
        for tau in involutions(n) {
            for nu in involutions(n) {
                let Ok(data) = HomotopyData::s_sharp(names(n), tau.clone(), nu.clone()) else {
                    continue;
                };
                for l in subsets(&all) {
                    for l1 in subsets(&l.iter().copied().collect::<Vec<_>>()) {
                        let Ok(profile) = SignProfile::new(&data, l.clone(), l1.clone()) else {
                            continue;
                        };
                        count.profiles += 1;
                        for x in 0..n {
                            // xAByBAz with |A| = τ|B|
                            let p =
                                Nanophrase::from_dense(vec![vec![0, 1, 1, 0]], &[data.tau(x), x])
                                    .unwrap();
                            let (a, b) = (
                                sign_couple(&p, 0, &data, &profile),
                                sign_couple(&p, 1, &data, &profile),
                            );
                            ensure!(
                                nondegenerate(a) == nondegenerate(b),
                                "H2: τ={tau:?} ν={nu:?} L={l:?} L1={l1:?} |B|={x}"
                            );
                            count.h2_sites += 1;
                        }
                        for &(x, y, z) in data.triples() {
                            // xAByACzBCt
                            let p =
                                Nanophrase::from_dense(vec![vec![0, 1, 0, 2, 1, 2]], &[x, y, z])
                                    .unwrap();
                            let c: Vec<bool> = (0..3)
                                .map(|a| nondegenerate(sign_couple(&p, a, &data, &profile)))
                                .collect();
                            ensure!(
                                c.iter().all(|&v| v) || c.iter().all(|&v| !v),
                                "H3: τ={tau:?} ν={nu:?} L={l:?} L1={l1:?} triple {:?}",
                                (x, y, z)
                            );
                            count.h3_sites += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// Virtual phrases

pub fn load_doc(name: &str) -> NanoDocument {
    let path = data_dir().join("nano").join(name);
    NanoDocument::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn abab() -> Nanophrase {
    load_doc("abab.nano").phrase(&alpha_star()).unwrap()
}

/// Walks every phrase reachable from `p` with at most `cap` occurrences and
/// checks that the bracket, by the library and by the Gauss oracle, stays
/// equal to its value at `p`. Returns the orbit size and that value.
pub fn bracket_orbit(p: &Nanophrase, cap: usize) -> Result<(usize, LaurentPoly), String> {
    let star = alpha_star();
    let expect = gauss_bracket(&to_gauss(p).map_err(|e| e.to_string())?);
    let mut seen: HashSet<Nanophrase> = HashSet::from([p.clone()]);
    let mut queue = VecDeque::from([p.clone()]);
    while let Some(q) = queue.pop_front() {
        let g = to_gauss(&q).map_err(|e| e.to_string())?;
        ensure!(gauss_bracket(&g) == expect, "oracle bracket changes at {g}");
        ensure!(
            kauffman_bracket_jones(&g.to_virtual_pd()) == expect,
            "bracket changes at {g}"
        );
        for r in neighbors(&q, &star, cap) {
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    Ok((seen.len(), expect))
}
