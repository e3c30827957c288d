//! MSCX and MSCX_Radius.
//!
//! The offspring starts at parent 1's first city. At each step every parent
//! proposes the first unvisited ("legitimate") city positioned after the
//! current city `p` in that parent; a parent with nothing unvisited after `p`
//! proposes its first unvisited city from the start instead. The cheaper
//! proposal from `p` wins, with ties going to parent 2's proposal.
//!
//! When *neither* parent has a legitimate city after `p` the step is a
//! fallback step. MSCX keeps the rule above. MSCX_Radius instead gathers the
//! first `r` unvisited cities of parent 1 and then of parent 2 (each scanned
//! from its start, duplicates dropped) and takes the one nearest to `p`,
//! ties going to the later candidate. With `r = 1` that is exactly MSCX.

use crate::error::Result;
use crate::tour::Tour;
use crate::tsplib::Instance;

use super::check_parents;

/// Per-application instrumentation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Trace {
    /// Steps at which neither parent had a legitimate city after `p`.
    pub fallbacks: usize,
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Fallback {
    Mscx,
    Radius(usize),
}

/// Finds the first unvisited position at or after a given index in one
/// parent. Visited positions are skipped with a path-halving jump table, so
/// a whole offspring construction is close to linear.
struct Scan<'a> {
    seq: &'a [u32],
    /// position of each label; index 0 unused
    pos: Vec<u32>,
    /// `jump[i] == i` iff position `i` is unvisited; `jump[n] == n` is the sentinel
    jump: Vec<u32>,
}

impl<'a> Scan<'a> {
    fn new(seq: &'a [u32]) -> Self {
        let n = seq.len();
        let mut pos = vec![0u32; n + 1];
        for (i, &label) in seq.iter().enumerate() {
            pos[label as usize] = i as u32;
        }
        Scan {
            seq,
            pos,
            jump: (0..=n as u32).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.jump[i] as usize != i {
            let next = self.jump[self.jump[i] as usize];
            self.jump[i] = next;
            i = next as usize;
        }
        i
    }

    fn visit(&mut self, label: u32) {
        let p = self.pos[label as usize] as usize;
        self.jump[p] = p as u32 + 1;
    }

    fn label_at(&self, i: usize) -> Option<u32> {
        self.seq.get(i).copied()
    }

    /// First unvisited city strictly after `label` in this parent.
    fn after(&mut self, label: u32) -> Option<u32> {
        let start = self.pos[label as usize] as usize + 1;
        let i = self.find(start);
        self.label_at(i)
    }

    /// First unvisited city from the start of this parent.
    fn first(&mut self) -> Option<u32> {
        let i = self.find(0);
        self.label_at(i)
    }

    /// Up to `k` unvisited cities from the start, in parent order.
    fn first_k(&mut self, k: usize, out: &mut Vec<u32>) {
        let mut i = self.find(0);
        let mut taken = 0;
        while taken < k {
            let Some(label) = self.label_at(i) else { break };
            if !out.contains(&label) {
                out.push(label);
            }
            taken += 1;
            i = self.find(i + 1);
        }
    }
}

/// Step 4 choice: `alpha` only if strictly cheaper.
#[inline]
fn cheaper(instance: &Instance, p: u32, alpha: u32, beta: u32) -> u32 {
    if instance.cost(p, alpha) < instance.cost(p, beta) {
        alpha
    } else {
        beta
    }
}

pub(crate) fn construct(
    p1: &Tour,
    p2: &Tour,
    instance: &Instance,
    fallback: Fallback,
) -> (Tour, Trace) {
    let n = p1.len();
    debug_assert_eq!(n, p2.len());
    let mut s1 = Scan::new(p1.labels());
    let mut s2 = Scan::new(p2.labels());
    let mut trace = Trace::default();
    let mut child = Vec::with_capacity(n);
    let mut candidates = Vec::new();

    let mut p = p1.first();
    child.push(p);
    s1.visit(p);
    s2.visit(p);

    while child.len() < n {
        let next = match (s1.after(p), s2.after(p)) {
            (Some(alpha), Some(beta)) => cheaper(instance, p, alpha, beta),
            (Some(alpha), None) => {
                let beta = s2.first().expect("unvisited city exists");
                cheaper(instance, p, alpha, beta)
            }
            (None, Some(beta)) => {
                let alpha = s1.first().expect("unvisited city exists");
                cheaper(instance, p, alpha, beta)
            }
            (None, None) => {
                trace.fallbacks += 1;
                match fallback {
                    Fallback::Mscx => {
                        let alpha = s1.first().expect("unvisited city exists");
                        let beta = s2.first().expect("unvisited city exists");
                        cheaper(instance, p, alpha, beta)
                    }
                    Fallback::Radius(r) => {
                        candidates.clear();
                        s1.first_k(r, &mut candidates);
                        s2.first_k(r, &mut candidates);
                        let mut best = candidates[0];
                        for &c in &candidates[1..] {
                            if instance.cost(p, c) <= instance.cost(p, best) {
                                best = c;
                            }
                        }
                        best
                    }
                }
            }
        };
        child.push(next);
        s1.visit(next);
        s2.visit(next);
        p = next;
    }

    (Tour::from_valid(child), trace)
}

/// Modified sequential constructive crossover. Deterministic, one offspring.
pub fn mscx(p1: &Tour, p2: &Tour, instance: &Instance) -> Result<Tour> {
    mscx_traced(p1, p2, instance).map(|(t, _)| t)
}

pub fn mscx_traced(p1: &Tour, p2: &Tour, instance: &Instance) -> Result<(Tour, Trace)> {
    check_parents(p1, p2, instance.n())?;
    Ok(construct(p1, p2, instance, Fallback::Mscx))
}

/// MSCX with the nearest-of-`r`-candidates fallback. `r` must be at least 1.
pub fn mscx_radius(p1: &Tour, p2: &Tour, instance: &Instance, r: usize) -> Result<Tour> {
    mscx_radius_traced(p1, p2, instance, r).map(|(t, _)| t)
}

pub fn mscx_radius_traced(
    p1: &Tour,
    p2: &Tour,
    instance: &Instance,
    r: usize,
) -> Result<(Tour, Trace)> {
    super::CrossoverKind::MscxRadius { r }.validate()?;
    check_parents(p1, p2, instance.n())?;
    Ok(construct(p1, p2, instance, Fallback::Radius(r)))
}
