use std::fmt;

use super::{Parity, UnitarySylow};
use crate::algebra::Mat;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupTag {
    /// `{X_{1,P}}`, or `{X_{1,P,alpha}}` for odd `n`.
    A,
    /// `{X_{1,P,0}}`; equal to `A` for even `n`.
    A0,
    /// `{X_{D,0}}`, or `{X_{D,0,0}}`.
    Dpart,
    /// The elements whose `D` has off-diagonal support in rows `>= i` and
    /// columns `<= j` (1-based, `j < i`).
    Ntilde(usize, usize),
    Full,
}

impl fmt::Display for SubgroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupTag::A => f.write_str("A"),
            SubgroupTag::A0 => f.write_str("A0"),
            SubgroupTag::Dpart => f.write_str("D"),
            SubgroupTag::Ntilde(i, j) => write!(f, "N{i}{j}"),
            SubgroupTag::Full => f.write_str("S"),
        }
    }
}

impl Group<UnitarySylow> {
    /// The subgroup named by `tag`, with a generating witness read off the
    /// parametrization.
    pub fn distinguished_subgroup(&self, tag: SubgroupTag) -> Result<Subgroup> {
        let s = self.repr();
        let m = s.params().m();
        let order = self.order() as u64;
        let a_gens: Vec<u32> = s.d_trivial_generators().into_iter().map(|g| g as u32).collect();
        Ok(match tag {
            SubgroupTag::Full => self.whole(),
            SubgroupTag::A => {
                Subgroup::from_parts(self.order(), (0..s.d_trivial_count() as u32).collect(), a_gens)
            }
            SubgroupTag::A0 => {
                let n = s.alpha_free_count();
                let gens = a_gens.into_iter().filter(|&g| (g as u64) < n).collect();
                Subgroup::from_parts(self.order(), (0..n as u32).collect(), gens)
            }
            SubgroupTag::Dpart => {
                let positions: Vec<(usize, usize)> =
                    s.d_digit_positions().iter().map(|&(a, b, _)| (a, b)).collect();
                let step = s.d_weight();
                let members = (0..order).step_by(step as usize).map(|x| x as u32).collect();
                Subgroup::from_parts(self.order(), members, self.root_generators(&positions))
            }
            SubgroupTag::Ntilde(i, j) => {
                if !(1 <= j && j < i && i <= m) {
                    return Err(Error::InvalidParams(format!(
                        "Ntilde({i},{j}) needs 1 <= j < i <= {m}"
                    )));
                }
                let allowed: Vec<(usize, usize, u64)> = s
                    .d_digit_positions()
                    .into_iter()
                    .filter(|&(a, b, _)| a + 1 >= i && b < j)
                    .collect();
                let forbidden: Vec<(usize, usize, u64)> = s
                    .d_digit_positions()
                    .into_iter()
                    .filter(|&(a, b, _)| !(a + 1 >= i && b < j))
                    .collect();
                let q2 = s.field().size() as u64;
                let members = (0..order)
                    .filter(|&x| forbidden.iter().all(|&(_, _, w)| (x / w) % q2 == 0))
                    .map(|x| x as u32)
                    .collect();
                let positions: Vec<(usize, usize)> =
                    allowed.iter().map(|&(a, b, _)| (a, b)).collect();
                let mut gens = self.root_generators(&positions);
                gens.extend(a_gens);
                Subgroup::from_parts(self.order(), members, gens)
            }
        })
    }

    /// `X_{1 + t E_ab, 0}` for each position and each `t` in an additive basis.
    fn root_generators(&self, positions: &[(usize, usize)]) -> Vec<u32> {
        let s = self.repr();
        let m = s.params().m();
        let mut gens = Vec::new();
        for &(a, b) in positions {
            for t in s.field().additive_basis() {
                let mut d = Mat::identity(m);
                d.set(a, b, t);
                gens.push(s.d_only_index(&d) as u32);
            }
        }
        gens
    }

    /// All tags that make sense for this instance.
    pub fn distinguished_tags(&self) -> Vec<SubgroupTag> {
        let s = self.repr();
        let m = s.params().m();
        let mut tags = vec![SubgroupTag::A];
        if s.params().parity() == Parity::Odd {
            tags.push(SubgroupTag::A0);
        }
        tags.push(SubgroupTag::Dpart);
        for i in 1..=m {
            for j in 1..i {
                tags.push(SubgroupTag::Ntilde(i, j));
            }
        }
        tags.push(SubgroupTag::Full);
        tags
    }
}
