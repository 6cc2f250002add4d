use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::acyclic::{max_matching, SlotBipartite};
use crate::graph::{ArcId, Instance, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("gave up after {attempts} attempts with {placed} of {wanted} arcs placed")]
    Exhausted { attempts: usize, placed: usize, wanted: usize },
}

fn check_params(n: usize, m: usize, d: usize) -> Result<(), GenError> {
    if d == 0 || n < d {
        return Err(GenError::InvalidParams(format!("need n >= d >= 1, got n = {n}, d = {d}")));
    }
    if n < 2 && m > 0 {
        return Err(GenError::InvalidParams("arcs need at least two vertices".into()));
    }
    Ok(())
}

/// Roots drawn without replacement, listed in increasing vertex order.
fn draw_roots(rng: &mut ChaCha8Rng, n: usize, d: usize, demand: impl Fn(&mut ChaCha8Rng) -> usize) -> Vec<(usize, usize)> {
    let mut picked = sample(rng, n, d).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|v| (v, demand(rng))).collect()
}

/// Uniform random pair of distinct vertices; in acyclic mode the head comes
/// earlier than the tail in `order`.
fn draw_pair(rng: &mut ChaCha8Rng, order: &[usize], acyclic: bool) -> (usize, usize) {
    let n = order.len();
    let p = rng.gen_range(0..n);
    let mut q = rng.gen_range(0..n - 1);
    if q >= p {
        q += 1;
    }
    if acyclic {
        let (lo, hi) = if p < q { (p, q) } else { (q, p) };
        (order[hi], order[lo])
    } else {
        (order[p], order[q])
    }
}

fn shuffled(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    sample(rng, n, n).into_vec()
}

/// `n` vertices, `m` arcs, `d` roots with demands uniform in `0..=fmax`.
pub fn gen_random(n: usize, m: usize, d: usize, fmax: usize, seed: u64, acyclic: bool) -> Result<Instance, GenError> {
    check_params(n, m, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = shuffled(&mut rng, n);
    let arcs: Vec<(usize, usize)> = (0..m).map(|_| draw_pair(&mut rng, &order, acyclic)).collect();
    let roots = draw_roots(&mut rng, n, d, |r| r.gen_range(0..=fmax));
    Ok(Instance::new(n, &arcs, &roots).expect("generated instances are valid"))
}

/// Incrementally maintained root reach, as bit masks over root indices.
struct Reach {
    mask: Vec<u128>,
    preds: Vec<Vec<usize>>,
}

impl Reach {
    fn new(n: usize, roots: &[(usize, usize)]) -> Self {
        let mut mask = vec![0u128; n];
        for (i, &(v, _)) in roots.iter().enumerate() {
            mask[v] |= 1 << i;
        }
        Reach { mask, preds: vec![Vec::new(); n] }
    }

    fn add(&mut self, t: usize, h: usize) {
        self.preds[h].push(t);
        let gain = self.mask[h];
        let mut stack = vec![t];
        while let Some(x) = stack.pop() {
            if self.mask[x] | gain == self.mask[x] {
                continue;
            }
            self.mask[x] |= gain;
            stack.extend(self.preds[x].iter().copied());
        }
    }
}

fn demand_of(mask: u128, roots: &[(usize, usize)]) -> usize {
    roots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, r)| r.1).sum()
}

fn draw_positive_roots(rng: &mut ChaCha8Rng, n: usize, d: usize, fmax: usize) -> Result<Vec<(usize, usize)>, GenError> {
    if fmax == 0 || d > 128 {
        return Err(GenError::InvalidParams("need 1 <= fmax and d <= 128".into()));
    }
    Ok(draw_roots(rng, n, d, |r| r.gen_range(1..=fmax)))
}

/// Random instance that is `(S,f)`-proper by construction: an arc is kept only
/// if its tail stays within `f(R(v))` outgoing star arcs. Demands are in
/// `1..=fmax`.
pub fn gen_proper(n: usize, m: usize, d: usize, fmax: usize, seed: u64, acyclic: bool) -> Result<Instance, GenError> {
    check_params(n, m, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = shuffled(&mut rng, n);
    let roots = draw_positive_roots(&mut rng, n, d, fmax)?;
    let own: Vec<usize> = {
        let mut f = vec![0; n];
        for &(v, dem) in &roots {
            f[v] = dem;
        }
        f
    };
    let mut reach = Reach::new(n, &roots);
    let mut outdeg = vec![0usize; n];
    let mut arcs = Vec::with_capacity(m);
    let limit = 200 * m.max(1);
    let mut attempts = 0;
    while arcs.len() < m {
        attempts += 1;
        if attempts > limit {
            return Err(GenError::Exhausted { attempts: limit, placed: arcs.len(), wanted: m });
        }
        let (t, h) = draw_pair(&mut rng, &order, acyclic);
        if demand_of(reach.mask[h], &roots) == 0 {
            continue;
        }
        let cap = demand_of(reach.mask[t] | reach.mask[h], &roots);
        if outdeg[t] + 1 + own[t] > cap {
            continue;
        }
        // Growing reach sets only raises capacities, so earlier tails stay proper.
        reach.add(t, h);
        outdeg[t] += 1;
        arcs.push((t, h));
    }
    Ok(Instance::new(n, &arcs, &roots).expect("generated instances are valid"))
}

/// Random acyclic instance that is coverable by construction: an arc is kept
/// only if its tail's bipartite graph still has a matching saturating its
/// out-arcs. Demands are in `1..=fmax`.
pub fn gen_planted_acyclic(n: usize, m: usize, d: usize, fmax: usize, seed: u64) -> Result<Instance, GenError> {
    check_params(n, m, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order = shuffled(&mut rng, n);
    let roots = draw_positive_roots(&mut rng, n, d, fmax)?;
    // Roots at the sink end of the order.
    order.sort_by_key(|v| roots.binary_search_by_key(v, |r| r.0).is_err());
    let slots: Vec<usize> = roots.iter().enumerate().flat_map(|(i, r)| std::iter::repeat_n(i, r.1)).collect();
    let mut reach = Reach::new(n, &roots);
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut arcs = Vec::with_capacity(m);
    let limit = 200 * m.max(1);
    let mut attempts = 0;
    while arcs.len() < m {
        attempts += 1;
        if attempts > limit {
            return Err(GenError::Exhausted { attempts: limit, placed: arcs.len(), wanted: m });
        }
        let (t, h) = draw_pair(&mut rng, &order, true);
        let tail_mask = reach.mask[t] | reach.mask[h];
        let heads: Vec<usize> = out[t].iter().copied().chain(std::iter::once(h)).collect();
        let right: Vec<usize> = (0..slots.len()).filter(|&k| tail_mask >> slots[k] & 1 == 1).collect();
        let adj = heads
            .iter()
            .map(|&w| (0..right.len()).filter(|&y| reach.mask[w] >> slots[right[y]] & 1 == 1).collect())
            .collect();
        let g = SlotBipartite {
            vertex: VertexId(t),
            left: (0..heads.len()).map(ArcId).collect(),
            right,
            adj,
        };
        if !max_matching(&g).is_saturating() {
            continue;
        }
        reach.add(t, h);
        out[t].push(h);
        arcs.push((t, h));
    }
    Ok(Instance::new(n, &arcs, &roots).expect("generated instances are valid"))
}
