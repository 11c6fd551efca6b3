//! Deterministic enumeration of instance spaces. Instances stream in a
//! fixed order (line sizes ascending, then agent counts, then position
//! subsets lexicographically, then preference assignments) so sweeps,
//! identifiers and golden outputs are reproducible byte for byte.

use itertools::Itertools;

use crate::instance::{Agent, ApprovalPair, LineInstance, NodeIndex};

/// The set of approval pairs agents may hold (and misreport).
///
/// The default domain requires every agent to approve at least one
/// facility; the widened domain admits the empty pair as well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PrefDomain {
    #[default]
    Default,
    AllowEmpty,
}

impl PrefDomain {
    pub fn reports(self) -> &'static [ApprovalPair] {
        const DEFAULT: [ApprovalPair; 3] =
            [ApprovalPair::F1_ONLY, ApprovalPair::F2_ONLY, ApprovalPair::BOTH];
        const WIDENED: [ApprovalPair; 4] = [
            ApprovalPair::F1_ONLY,
            ApprovalPair::F2_ONLY,
            ApprovalPair::BOTH,
            ApprovalPair::NEITHER,
        ];
        match self {
            PrefDomain::Default => &DEFAULT,
            PrefDomain::AllowEmpty => &WIDENED,
        }
    }

    pub fn contains(self, prefs: ApprovalPair) -> bool {
        prefs.approves_any() || self == PrefDomain::AllowEmpty
    }

    /// Enumerates every length-`n` preference profile over this domain,
    /// first agent most significant.
    pub fn profiles(self, n: usize) -> impl Iterator<Item = Vec<ApprovalPair>> {
        let reports = self.reports();
        let total = reports.len().pow(n as u32);
        (0..total).map(move |mut code| {
            let mut profile = vec![ApprovalPair::NEITHER; n];
            for slot in profile.iter_mut().rev() {
                *slot = reports[code % reports.len()];
                code /= reports.len();
            }
            profile
        })
    }
}

/// Every instance with `2 <= n <= m <= m_max` and `n >= n_min`: all
/// position subsets, all preference assignments from `domain`.
pub fn enumerate_instances(
    m_max: NodeIndex,
    n_min: usize,
    domain: PrefDomain,
) -> impl Iterator<Item = LineInstance> {
    InstanceFamily { m_max, n_min, domain, ..InstanceFamily::default() }.into_iter()
}

/// Constraint on the number of unoccupied nodes in a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EmptyNodes {
    #[default]
    Any,
    /// Fully occupied lines only (`n = m`).
    None,
    /// At least one empty node (`n < m`).
    AtLeastOne,
}

impl EmptyNodes {
    fn admits(self, n: usize, m: NodeIndex) -> bool {
        match self {
            EmptyNodes::Any => true,
            EmptyNodes::None => n == m as usize,
            EmptyNodes::AtLeastOne => n < m as usize,
        }
    }
}

/// An enumerable family of instances, the unit of work for sweeps and
/// exhaustive checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFamily {
    pub m_min: NodeIndex,
    pub m_max: NodeIndex,
    pub n_min: usize,
    /// Inclusive; `None` means up to `m`.
    pub n_max: Option<usize>,
    pub domain: PrefDomain,
    pub empty_nodes: EmptyNodes,
}

impl Default for InstanceFamily {
    fn default() -> InstanceFamily {
        InstanceFamily {
            m_min: 2,
            m_max: 2,
            n_min: 2,
            n_max: None,
            domain: PrefDomain::Default,
            empty_nodes: EmptyNodes::Any,
        }
    }
}

impl InstanceFamily {
    /// All default-domain instances with at most `m_max` nodes.
    pub fn up_to(m_max: NodeIndex) -> InstanceFamily {
        InstanceFamily { m_max, ..InstanceFamily::default() }
    }

    pub fn with_domain(mut self, domain: PrefDomain) -> InstanceFamily {
        self.domain = domain;
        self
    }

    pub fn with_n(mut self, n_min: usize, n_max: usize) -> InstanceFamily {
        self.n_min = n_min;
        self.n_max = Some(n_max);
        self
    }

    pub fn with_empty_nodes(mut self, empty_nodes: EmptyNodes) -> InstanceFamily {
        self.empty_nodes = empty_nodes;
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = LineInstance> + '_ {
        let family = self.clone();
        family.into_iter()
    }
}

impl IntoIterator for InstanceFamily {
    type Item = LineInstance;
    type IntoIter = Box<dyn Iterator<Item = LineInstance>>;

    fn into_iter(self) -> Self::IntoIter {
        let InstanceFamily { m_min, m_max, n_min, n_max, domain, empty_nodes } = self;
        let iter = (m_min.max(2)..=m_max).flat_map(move |m| {
            let n_hi = n_max.unwrap_or(m as usize).min(m as usize);
            (n_min.max(2)..=n_hi)
                .filter(move |&n| empty_nodes.admits(n, m))
                .flat_map(move |n| {
                    (1..=m).combinations(n).flat_map(move |positions| {
                        domain.profiles(n).map(move |profile| {
                            let agents = positions
                                .iter()
                                .zip(&profile)
                                .map(|(&pos, &prefs)| Agent::new(pos, prefs))
                                .collect();
                            LineInstance::new(m, agents)
                                .expect("enumeration yields valid instances")
                        })
                    })
                })
        });
        Box::new(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_instances(2, 2, PrefDomain::Default).count(), 9);
        assert_eq!(enumerate_instances(3, 3, PrefDomain::Default).count(), 27);
        assert_eq!(enumerate_instances(2, 2, PrefDomain::AllowEmpty).count(), 16);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let first: Vec<_> = enumerate_instances(4, 2, PrefDomain::Default).collect();
        let second: Vec<_> = enumerate_instances(4, 2, PrefDomain::Default).collect();
        assert_eq!(first, second);
    }

    #[test]
    fn family_filters_restrict_the_stream() {
        // m = 4: full occupancy means n = 4, with 3^4 profiles.
        let full = InstanceFamily { m_min: 4, m_max: 4, ..InstanceFamily::default() }
            .with_empty_nodes(EmptyNodes::None);
        assert_eq!(full.iter().count(), 81);
        assert!(full.iter().all(|i| !i.has_empty_nodes()));

        let sparse = InstanceFamily { m_min: 4, m_max: 4, ..InstanceFamily::default() }
            .with_empty_nodes(EmptyNodes::AtLeastOne);
        assert!(sparse.iter().all(|i| i.has_empty_nodes()));
        // n = 2: C(4,2) * 9; n = 3: C(4,3) * 27.
        assert_eq!(sparse.iter().count(), 6 * 9 + 4 * 27);

        let three_agent = InstanceFamily::up_to(4).with_n(3, 3);
        assert!(three_agent.iter().all(|i| i.n() == 3));
        assert_eq!(three_agent.iter().count(), 27 + 4 * 27);
    }

    #[test]
    fn widened_domain_includes_empty_pairs() {
        let family = InstanceFamily::up_to(2).with_domain(PrefDomain::AllowEmpty);
        assert!(family.iter().any(|i| i.has_empty_prefs()));
        assert!(InstanceFamily::up_to(3).iter().all(|i| !i.has_empty_prefs()));
    }
}
