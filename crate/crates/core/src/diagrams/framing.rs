use crate::diagrams::pd::{Arc, Component, ComponentSeed, PdCode};

/// Inserts Reidemeister-I kinks so that every component has self-writhe 0.
///
/// Kinks for a component are placed consecutively right after its first
/// arc. A positive kink is the tuple `[in, out, ℓ, ℓ]`, a negative one
/// `[in, ℓ, ℓ, out]`.
pub fn normalize_framing(pd: &PdCode) -> PdCode {
    let kinks: Vec<(usize, i64)> = (0..pd.component_count())
        .map(|c| (c, -pd.self_writhe(c)))
        .filter(|&(_, k)| k != 0)
        .collect();
    if kinks.is_empty() {
        return pd.clone();
    }
    let mut crossings = pd.crossings().to_vec();
    let mut signs = pd.signs().to_vec();
    let mut next: Arc = pd.arcs().max().unwrap_or(0) + 1;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    for (c, k) in kinks {
        let Component::Traced(arcs) = &pd.components()[c] else {
            unreachable!("free loops have no self-crossings")
        };
        let first = arcs[0];
        let (hx, hq) = pd.ends(first).head;
        let sign: i8 = if k > 0 { 1 } else { -1 };
        let mut incoming = first;
        for _ in 0..k.unsigned_abs() {
            let out = fresh();
            let l = fresh();
            crossings.push(if sign > 0 {
                [incoming, out, l, l]
            } else {
                [incoming, l, l, out]
            });
            signs.push(sign);
            incoming = out;
        }
        crossings[hx][hq] = incoming;
    }
    let seeds: Vec<ComponentSeed> = pd.seeds();
    PdCode::from_parts(crossings, signs, seeds).expect("kink insertion keeps the diagram valid")
}
