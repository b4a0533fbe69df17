//! Root-system data, Weyl group enumeration and action, descents, and the
//! identification of coweights with signed subsets.

mod element;
mod label;
mod system;

use itertools::Itertools;

pub use element::WeylElement;
pub use label::SubsetLabel;
pub use system::{Family, RootSystem, RootSystemId};

/// All elements of the Weyl group, lexicographically ordered by one-line
/// notation.
pub fn enumerate_weyl(system: RootSystemId) -> Vec<WeylElement> {
    let d = system.ambient_dim();
    let perms = (1..=d as i32).permutations(d);
    let mut out: Vec<WeylElement> = match system.family() {
        Family::A => perms
            .map(|p| WeylElement::new_unchecked(system, p))
            .collect(),
        Family::B | Family::C | Family::D => {
            let even_only = system.family() == Family::D;
            perms
                .flat_map(|p| {
                    (0u32..1 << d).filter_map(move |mask| {
                        if even_only && mask.count_ones() % 2 == 1 {
                            return None;
                        }
                        let signed = p
                            .iter()
                            .enumerate()
                            .map(|(i, &k)| if mask >> i & 1 == 1 { -k } else { k })
                            .collect();
                        Some(WeylElement::new_unchecked(system, signed))
                    })
                })
                .collect()
        }
        Family::G2 => perms
            .flat_map(|p| {
                let negated = p.iter().map(|k| -k).collect();
                [
                    WeylElement::new_unchecked(system, p),
                    WeylElement::new_unchecked(system, negated),
                ]
            })
            .collect(),
    };
    out.sort();
    out
}

/// The element sending every simple root to a negative root.
pub fn longest_element(system: RootSystemId) -> WeylElement {
    let d = system.ambient_dim() as i32;
    let n = system.rank() as i32;
    let oneline: Vec<i32> = match system.family() {
        Family::A => (1..=d).rev().collect(),
        Family::B | Family::C | Family::G2 => (1..=d).map(|k| -k).collect(),
        Family::D => (1..=n)
            .map(|k| if k == n && n % 2 == 1 { k } else { -k })
            .collect(),
    };
    WeylElement::new_unchecked(system, oneline)
}
