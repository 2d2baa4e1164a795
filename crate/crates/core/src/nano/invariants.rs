//! Colored Jones polynomial and Khovanov homology of `V_{L₁⊂L}(P)`.

use serde_json::{json, Value};

use crate::algebra::HomologyTable;
use crate::budget::Budget;
use crate::colored::colored_jones;
use crate::diagrams::GaussPhrase;
use crate::error::Result;
use crate::khovanov::khovanov_homology;
use crate::nano::data::{alpha_star, HomotopyData};
use crate::nano::functors::{functor_v, to_gauss, SignProfile};
use crate::nano::phrase::Nanophrase;
use crate::poly::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NanoInvariants {
    /// `V_{L₁⊂L}(P)` over `α_*`.
    pub image: Nanophrase,
    pub gauss: GaussPhrase,
    /// State sum on the rotation system; defined for virtual phrases too.
    pub colored_jones: LaurentPoly,
    /// `None` when the phrase is not realizable.
    pub khovanov: Option<HomologyTable>,
}

impl NanoInvariants {
    pub fn realizable(&self) -> bool {
        self.khovanov.is_some()
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "image": self.image.to_text(&alpha_star()),
            "realizable": self.realizable(),
            "colored_jones": {"terms": self.colored_jones.to_pairs(), "text": self.colored_jones.to_string()},
            "khovanov": match &self.khovanov {
                Some(h) => h.to_json_value(),
                None => json!("NotRealizable"),
            },
        })
    }
}

/// `n` has one color per word; homology is computed only for realizable
/// images and is the homology of the uncabled diagram.
pub fn nanophrase_invariants(
    p: &Nanophrase,
    data: &HomotopyData,
    profile: &SignProfile,
    n: &[usize],
    budget: &Budget,
) -> Result<NanoInvariants> {
    let image = functor_v(p, data, profile)?;
    let gauss = to_gauss(&image)?;
    let pd = gauss.to_virtual_pd();
    let colored_jones = colored_jones(&pd, n, budget)?;
    let khovanov = if pd.is_planar() {
        budget.check_homology("nanophrase diagram", pd.crossing_count())?;
        Some(khovanov_homology(&pd)?)
    } else {
        None
    };
    Ok(NanoInvariants {
        image,
        gauss,
        colored_jones,
        khovanov,
    })
}
