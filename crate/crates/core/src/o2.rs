//! Exact model of `O(2) = SO(2) ⊔ A·SO(2)` with angles in `Q/Z`.
//!
//! `(false, θ)` is the rotation `R_θ` by `2πθ` and `(true, θ)` is `A·R_θ`.
//! Since `A R_θ A = R_{-θ}` the product is
//! `(r₁, θ₁)(r₂, θ₂) = (r₁ ⊕ r₂, θ₂ + (-1)^{r₂} θ₁)`.

use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::group::{named, FiniteGroup};

pub type Angle = Ratio<i64>;

fn reduce(theta: Angle) -> Angle {
    let f = theta - theta.floor();
    if f < Angle::zero() {
        f + Angle::one()
    } else {
        f
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct O2Element {
    reflect: bool,
    angle: Angle,
}

impl O2Element {
    pub fn new(reflect: bool, angle: Angle) -> Self {
        O2Element { reflect, angle: reduce(angle) }
    }

    pub fn identity() -> Self {
        O2Element::new(false, Angle::zero())
    }

    pub fn rotation(angle: Angle) -> Self {
        O2Element::new(false, angle)
    }

    /// `A·R_θ`.
    pub fn reflection(angle: Angle) -> Self {
        O2Element::new(true, angle)
    }

    /// The reflection `A` itself.
    pub fn a() -> Self {
        O2Element::reflection(Angle::zero())
    }

    pub fn reflect(&self) -> bool {
        self.reflect
    }

    /// `θ` in `[0, 1)`, in lowest terms.
    pub fn angle(&self) -> Angle {
        self.angle
    }

    pub fn is_identity(&self) -> bool {
        !self.reflect && self.angle.is_zero()
    }

    pub fn inverse(&self) -> Self {
        if self.reflect {
            *self
        } else {
            O2Element::rotation(-self.angle)
        }
    }
}

pub fn o2_multiply(a: &O2Element, b: &O2Element) -> O2Element {
    let carried = if b.reflect { -a.angle } else { a.angle };
    O2Element::new(a.reflect ^ b.reflect, b.angle + carried)
}

/// `a⁻¹ b⁻¹ a b`.
pub fn o2_commutator(a: &O2Element, b: &O2Element) -> O2Element {
    let left = o2_multiply(&a.inverse(), &b.inverse());
    o2_multiply(&o2_multiply(&left, a), b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub samples: usize,
    pub seed: u64,
    /// Counts per identity: `[AR_θ,R_τ]=R_{2τ}`, `[R_θ,AR_τ]=R_{-2θ}`,
    /// `[AR_θ,AR_τ]=R_{2(τ-θ)}`.
    pub violations: [usize; 3],
    /// Commutators that were not rotations.
    pub non_rotations: usize,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violations == [0; 3] && self.non_rotations == 0
    }
}

fn random_angle(rng: &mut ChaCha8Rng) -> Angle {
    let den = rng.gen_range(1..=10_000i64);
    Angle::new(rng.gen_range(0..den), den)
}

/// Checks the three commutator identities on `samples` seeded angle pairs.
pub fn check_commutator_identities(seed: u64, samples: usize) -> IdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = [0usize; 3];
    let mut non_rotations = 0;
    for _ in 0..samples {
        let theta = random_angle(&mut rng);
        let tau = random_angle(&mut rng);
        let two = Angle::from_integer(2);
        let cases = [
            (
                o2_commutator(&O2Element::reflection(theta), &O2Element::rotation(tau)),
                O2Element::rotation(two * tau),
            ),
            (
                o2_commutator(&O2Element::rotation(theta), &O2Element::reflection(tau)),
                O2Element::rotation(-two * theta),
            ),
            (
                o2_commutator(&O2Element::reflection(theta), &O2Element::reflection(tau)),
                O2Element::rotation(two * (tau - theta)),
            ),
        ];
        for (i, (got, want)) in cases.iter().enumerate() {
            if got != want {
                violations[i] += 1;
            }
            if got.reflect {
                non_rotations += 1;
            }
        }
    }
    IdentityReport { samples, seed, violations, non_rotations }
}

/// `⟨A, R_{1/n}⟩`, sorted.
pub fn dihedral_subgroup(n: u32) -> Vec<O2Element> {
    assert!(n >= 1);
    let gens = [O2Element::a(), O2Element::rotation(Angle::new(1, n as i64))];
    let mut elements = vec![O2Element::identity()];
    let mut k = 0;
    while k < elements.len() {
        let x = elements[k];
        for g in &gens {
            let y = o2_multiply(&x, g);
            if !elements.contains(&y) {
                elements.push(y);
            }
        }
        k += 1;
    }
    elements.sort();
    elements
}

/// The element matching index `f·n + a` of the named dihedral group.
pub fn dihedral_element(n: u32, index: usize) -> O2Element {
    let (f, a) = (index / n as usize, index % n as usize);
    O2Element::new(f == 1, Angle::new(a as i64, n as i64))
}

/// Whether the named dihedral group of order `2n` has the same table as the
/// subgroup `⟨A, R_{1/n}⟩` under `f·n + a ↔ A^f R_{a/n}`.
pub fn dihedral_table_agrees(n: u32) -> bool {
    let group: FiniteGroup = match named::dihedral(n as usize) {
        Ok(g) => g,
        Err(_) => return false,
    };
    let sub = dihedral_subgroup(n);
    if sub.len() != group.order() {
        return false;
    }
    (0..group.order()).all(|i| {
        (0..group.order()).all(|j| {
            o2_multiply(&dihedral_element(n, i), &dihedral_element(n, j)) == dihedral_element(n, group.mul(i, j))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Angle {
        Angle::new(a, b)
    }

    #[test]
    fn basic_products() {
        let r = O2Element::rotation(q(1, 4));
        assert_eq!(o2_multiply(&r, &r), O2Element::rotation(q(1, 2)));
        let a = O2Element::a();
        assert!(o2_multiply(&a, &a).is_identity());
        let conj = o2_multiply(&o2_multiply(&a, &O2Element::rotation(q(1, 3))), &a);
        assert_eq!(conj, O2Element::rotation(q(2, 3)));
        assert_eq!(O2Element::rotation(q(-1, 3)).angle(), q(2, 3));
    }

    #[test]
    fn commutator_examples() {
        let c = o2_commutator(&O2Element::reflection(q(1, 5)), &O2Element::rotation(q(1, 7)));
        assert_eq!(c, O2Element::rotation(q(2, 7)));
        let c = o2_commutator(&O2Element::rotation(q(1, 3)), &O2Element::reflection(q(1, 9)));
        assert_eq!(c, O2Element::rotation(q(1, 3)));
        let c = o2_commutator(&O2Element::reflection(q(2, 5)), &O2Element::reflection(q(2, 5)));
        assert!(c.is_identity());
    }

    #[test]
    fn seeded_identities() {
        let r = check_commutator_identities(7, 1000);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn dihedral_agreement() {
        for n in 1..=12 {
            assert_eq!(dihedral_subgroup(n).len(), 2 * n as usize);
            assert!(dihedral_table_agrees(n), "n = {n}");
        }
    }
}
