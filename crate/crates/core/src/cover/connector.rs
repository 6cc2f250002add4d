use thiserror::Error;

use crate::graph::{build_plus, build_star, ArcId, ArcKind, Instance, NotProper, ReachProfile, VertexId};
use crate::matroid::{CommonIndependentSet, SlotPartition};
use crate::verify::local_arc_connectivity;
use crate::wmi::{wmi_solve_bounded, WeightFunction};

/// A multiset of parallel copies, stored as the sorted list of origin arcs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Connector {
    origins: Vec<ArcId>,
}

impl Connector {
    pub fn new(mut origins: Vec<ArcId>) -> Self {
        origins.sort_unstable();
        Connector { origins }
    }

    pub fn empty() -> Self {
        Connector::default()
    }

    pub fn origins(&self) -> &[ArcId] {
        &self.origins
    }

    pub fn size(&self) -> usize {
        self.origins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origins.is_empty()
    }

    /// `(origin, copies)` pairs in origin order.
    pub fn multiplicities(&self) -> Vec<(ArcId, usize)> {
        let mut out: Vec<(ArcId, usize)> = Vec::new();
        for &a in &self.origins {
            match out.last_mut() {
                Some((b, c)) if *b == a => *c += 1,
                _ => out.push((a, 1)),
            }
        }
        out
    }

    /// `D + B`, copies appended in origin order.
    pub fn apply(&self, inst: &Instance) -> Instance {
        inst.with_copies(&self.origins)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("lambda({vertex}, s*) = {value} < {required}")]
pub struct ConnectorDeficit {
    pub vertex: VertexId,
    pub value: usize,
    pub required: usize,
}

/// Checks `lambda(v, s*; D* + B) >= f(R_D(v))` at every vertex and reports the
/// first vertex where it fails.
pub fn is_rooted_connector(inst: &Instance, rp: &ReachProfile, b: &Connector) -> Result<(), ConnectorDeficit> {
    let star = build_star(&b.apply(inst));
    for v in inst.vertices() {
        let required = rp.demand_reach(v);
        if required == 0 {
            continue;
        }
        let value = local_arc_connectivity(&star, v, star.star_vertex()).value;
        if value < required {
            return Err(ConnectorDeficit { vertex: v, value, required });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ConnectorError {
    #[error(transparent)]
    NotProper(#[from] NotProper),
    #[error("no rooted connector of size opt_D = {opt} exists")]
    NoConnector { opt: usize },
}

/// A connector of size `opt_D` with the complete intersection of `(D + B)*`
/// that certifies it.
#[derive(Debug, Clone)]
pub struct ConnectorSolution {
    pub connector: Connector,
    pub host: Instance,
    pub cis: CommonIndependentSet,
}

pub fn find_rooted_connector(inst: &Instance, rp: &ReachProfile) -> Result<ConnectorSolution, ConnectorError> {
    let plus = build_plus(inst, rp)?;
    let opt = plus.copies_per_arc;
    let w = WeightFunction::copy_indicator(&plus.star);
    let found = wmi_solve_bounded(&plus.star, rp, &w, rp.total(), opt as i64)
        .ok()
        .filter(|cis| w.total(&cis.arcs) == opt as i64)
        .ok_or(ConnectorError::NoConnector { opt })?;

    let base_arcs = inst.arc_count();
    let plus_arcs = plus.star.base().arc_count();
    let mut copies: Vec<ArcId> =
        found.arcs.iter().copied().filter(|&a| plus.star.arc(a).kind == ArcKind::Copy).collect();
    copies.sort_unstable();
    let origins: Vec<ArcId> = copies.iter().map(|&c| plus.star.arc(c).origin_or_self()).collect();
    let connector = Connector::new(origins.clone());
    let host = inst.with_copies(&origins);
    let host_arcs = host.arc_count();

    let partition = SlotPartition::from_pairs(found.partition.iter().map(|(a, k)| {
        let mapped = if a.0 < base_arcs {
            a
        } else if a.0 >= plus_arcs {
            ArcId(host_arcs + (a.0 - plus_arcs))
        } else {
            ArcId(base_arcs + copies.binary_search(&a).expect("copy in intersection"))
        };
        (mapped, k)
    }));
    let star = build_star(&host);
    let cis = CommonIndependentSet::from_partition(&star, rp, partition);
    debug_assert!(cis.complete);
    Ok(ConnectorSolution { connector, host, cis })
}
