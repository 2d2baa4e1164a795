use crate::error::{Error, Result};

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient fits in u64")
}

/// `∏ C(nᵢ − kᵢ, kᵢ)`, for `0 ≤ 2kᵢ ≤ nᵢ`.
pub fn binom_product(n: &[usize], k: &[usize]) -> Result<u64> {
    if n.len() != k.len() {
        return Err(Error::ColorRange(format!(
            "{} colors but {} levels",
            n.len(),
            k.len()
        )));
    }
    let mut acc = 1u64;
    for (i, (&ni, &ki)) in n.iter().zip(k).enumerate() {
        if 2 * ki > ni {
            return Err(Error::ColorRange(format!("k[{i}] = {ki} exceeds ⌊{ni}/2⌋")));
        }
        acc = acc
            .checked_mul(binomial(ni - ki, ki))
            .ok_or_else(|| Error::ColorRange("product overflows".into()))?;
    }
    Ok(acc)
}

/// All `k` with `0 ≤ kᵢ ≤ ⌊nᵢ/2⌋`, lexicographically.
pub fn color_levels(n: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &ni in n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=ni / 2).map(move |ki| {
                    let mut v = prefix.clone();
                    v.push(ki);
                    v
                })
            })
            .collect();
    }
    out
}
