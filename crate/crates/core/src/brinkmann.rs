//! Brinkmann problems: given an endomorphism `Φ` and elements `g`, `h`,
//! decide whether `gΦ^k = h` for some `k ≥ 0`.
//!
//! The free-group solver is partial. It settles the question through the
//! abelianized orbit problem and through cycle detection on the word orbit,
//! and answers `Undecided` otherwise. The type I solver reduces the abelian
//! coordinate to an affine orbit problem and is complete whenever the free
//! solver is.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::error::{FabfError, Result};
use crate::group::Element;
use crate::hom::{Hom, TypeIHom};
use crate::orbit::{affine_orbit, matrix_orbit, AffineMap, LogSet};
use crate::words::{FreeEndo, Word};

/// Cooperative cancellation flag shared between a caller and a running search.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Debug)]
pub struct BrinkmannConfig {
    /// Maximum number of iterations of the endomorphism.
    pub bound: u64,
    /// Words longer than this stop the scan.
    pub max_word_len: usize,
    /// Total letters kept for cycle detection.
    pub memory_letters: usize,
    /// Total letters produced by one scan before it gives up.
    pub work_letters: usize,
    pub cancel: Option<CancelToken>,
}

impl Default for BrinkmannConfig {
    fn default() -> Self {
        Self { bound: 10_000, max_word_len: 1 << 20, memory_letters: 1 << 22, work_letters: 1 << 24, cancel: None }
    }
}

impl BrinkmannConfig {
    pub fn with_bound(bound: u64) -> Self {
        Self { bound, ..Self::default() }
    }

    fn cancelled(&self) -> bool {
        self.cancel.as_ref().is_some_and(CancelToken::is_cancelled)
    }
}

/// Why a `No` answer is correct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The abelianized orbit problem has no solution.
    AbelianEmpty,
    /// The abelianization allows a single exponent and it fails.
    AbelianSingleton,
    /// The orbit closed up into a cycle without meeting the target.
    OrbitExhausted,
    /// The free parts meet at a single exponent where the abelian parts differ.
    FreeSingleton,
    /// The affine recursion on the abelian coordinate misses the target.
    AffineEmpty,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::AbelianEmpty => "abelian-empty",
            Certificate::AbelianSingleton => "abelian-singleton",
            Certificate::OrbitExhausted => "orbit-exhausted",
            Certificate::FreeSingleton => "free-singleton",
            Certificate::AffineEmpty => "affine-empty",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriState {
    /// Minimal witness, with the full set of solutions when it is known.
    Yes {
        k: u64,
        logs: Option<LogSet>,
    },
    No(Certificate),
    Undecided {
        bound: u64,
    },
}

impl TriState {
    pub fn exit_code(&self) -> i32 {
        match self {
            TriState::Yes { .. } => 0,
            TriState::No(_) => 1,
            TriState::Undecided { .. } => 2,
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriState::Yes { k, logs: Some(LogSet::AP { p, .. }) } => write!(f, "YES k={k} period={p}"),
            TriState::Yes { k, .. } => write!(f, "YES k={k}"),
            TriState::No(c) => write!(f, "NO {c}"),
            TriState::Undecided { bound } => write!(f, "UNDECIDED bound={bound}"),
        }
    }
}

/// A φ-logarithm set, or the bound at which the search gave up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiLog {
    Known(LogSet),
    Undecided { bound: u64 },
}

/// Period of an element under an endomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Period {
    Known(u64),
    Undecided { bound: u64 },
}

fn check_endo_words(phi: &FreeEndo, words: &[&Word]) -> Result<()> {
    if !phi.is_endo() {
        return Err(FabfError::RankMismatch(format!(
            "F_{} -> F_{} is not an endomorphism",
            phi.source_rank(),
            phi.target_rank()
        )));
    }
    for w in words {
        if w.max_generator() > phi.source_rank() {
            return Err(FabfError::RankMismatch(format!("{w} is not a word in F_{}", phi.source_rank())));
        }
    }
    Ok(())
}

/// Decides `∃k ≥ 0: uφ^k = v` in `F_n` where possible.
pub fn free_brinkmann(u: &Word, phi: &FreeEndo, v: &Word, cfg: &BrinkmannConfig) -> Result<TriState> {
    check_endo_words(phi, &[u, v])?;
    let n = phi.source_rank();
    let abelian = matrix_orbit(&u.abelianize(n)?, &phi.abelian_matrix(), &v.abelianize(n)?)?;
    let LogSet::AP { k0: ak0, p: ap } = abelian else {
        return Ok(TriState::No(Certificate::AbelianEmpty));
    };

    let mut seen: HashMap<Word, u64> = HashMap::new();
    let mut stored = 0usize;
    let mut work = 0usize;
    let mut hit: Option<u64> = None;
    let mut cur = u.clone();
    let mut k = 0u64;
    loop {
        if cur == *v {
            match hit {
                None => hit = Some(k),
                Some(k0) => return Ok(TriState::Yes { k: k0, logs: Some(LogSet::AP { k0, p: k - k0 }) }),
            }
        }
        // beyond the only abelian candidate nothing new can happen
        if ap == 0 && k >= ak0 {
            return Ok(match hit {
                Some(k0) => TriState::Yes { k: k0, logs: Some(LogSet::AP { k0, p: 0 }) },
                None => TriState::No(Certificate::AbelianSingleton),
            });
        }
        if let Some(&prev) = seen.get(&cur) {
            // eventually periodic orbit: cur recurs with period k - prev
            return Ok(match hit {
                Some(k0) if k0 >= prev => TriState::Yes { k: k0, logs: Some(LogSet::AP { k0, p: k - prev }) },
                Some(k0) => TriState::Yes { k: k0, logs: Some(LogSet::AP { k0, p: 0 }) },
                None => TriState::No(Certificate::OrbitExhausted),
            });
        }
        work += cur.len();
        if k >= cfg.bound || cur.len() > cfg.max_word_len || work > cfg.work_letters || cfg.cancelled() {
            return Ok(match hit {
                Some(k0) => TriState::Yes { k: k0, logs: None },
                None => TriState::Undecided { bound: k },
            });
        }
        if stored <= cfg.memory_letters {
            stored += cur.len() + 1;
            seen.insert(cur.clone(), k);
        }
        cur = phi.apply(&cur)?;
        k += 1;
    }
}

/// `{k ≥ 0 : uφ^k = v}`: minimal exponent from [`free_brinkmann`], period
/// from the same question asked of `vφ` and `v`.
pub fn philog(u: &Word, phi: &FreeEndo, v: &Word, cfg: &BrinkmannConfig) -> Result<PhiLog> {
    let k0 = match free_brinkmann(u, phi, v, cfg)? {
        TriState::No(_) => return Ok(PhiLog::Known(LogSet::Empty)),
        TriState::Undecided { bound } => return Ok(PhiLog::Undecided { bound }),
        TriState::Yes { logs: Some(l), .. } => return Ok(PhiLog::Known(l)),
        TriState::Yes { k, logs: None } => k,
    };
    Ok(match free_brinkmann(&phi.apply(v)?, phi, v, cfg)? {
        TriState::Yes { k, .. } => PhiLog::Known(LogSet::AP { k0, p: k + 1 }),
        TriState::No(_) => PhiLog::Known(LogSet::AP { k0, p: 0 }),
        TriState::Undecided { bound } => PhiLog::Undecided { bound },
    })
}

fn scan(h: &TypeIHom, g: &Element, target: &Element, cfg: &BrinkmannConfig) -> Result<TriState> {
    let mut cur = g.clone();
    let mut work = 0usize;
    for k in 0..=cfg.bound {
        if cur == *target {
            return Ok(TriState::Yes { k, logs: None });
        }
        work += cur.free_part().len();
        if cfg.cancelled() || cur.free_part().len() > cfg.max_word_len || work > cfg.work_letters {
            return Ok(TriState::Undecided { bound: k });
        }
        cur = h.apply(&cur)?;
    }
    Ok(TriState::Undecided { bound: cfg.bound })
}

/// Decides `∃k ≥ 0: gΦ^k = target` for a verified type I endomorphism.
pub fn fabf_brinkmann_type_i(h: &TypeIHom, g: &Element, target: &Element, cfg: &BrinkmannConfig) -> Result<TriState> {
    if !h.is_verified() {
        return Err(FabfError::Unverified);
    }
    if !h.is_endo() {
        return Err(FabfError::GroupMismatch("Brinkmann problems need an endomorphism".into()));
    }
    if g.group() != h.source() || target.group() != h.source() {
        return Err(FabfError::GroupMismatch("elements are not in the domain".into()));
    }
    let (u, v) = (g.free_part(), target.free_part());
    let (k0, p) = match philog(u, h.phi(), v, cfg)? {
        PhiLog::Undecided { .. } => return scan(h, g, target, cfg),
        PhiLog::Known(LogSet::Empty) => {
            return Ok(TriState::No(match free_brinkmann(u, h.phi(), v, cfg)? {
                TriState::No(c) => c,
                _ => Certificate::OrbitExhausted,
            }))
        }
        PhiLog::Known(LogSet::AP { k0, p }) => (k0, p),
    };
    let start = h.apply_power(g, k0)?;
    if p == 0 {
        return Ok(if start == *target {
            TriState::Yes { k: k0, logs: Some(LogSet::AP { k0, p: 0 }) }
        } else {
            TriState::No(Certificate::FreeSingleton)
        });
    }
    // (gΦ^{k0+λp})τ = ((gΦ^{k0})τ)Θ^λ with Θ: x ↦ xQ^p + β_{Φ^p}(v)
    let theta = AffineMap::new(h.q().pow(p), h.beta_power(v, p)?)?;
    match affine_orbit(start.abelian_part(), &theta, target.abelian_part())? {
        LogSet::Empty => Ok(TriState::No(Certificate::AffineEmpty)),
        LogSet::AP { k0: l0, p: lp } => {
            let k = k0 + l0 * p;
            if k <= cfg.bound && h.apply_power(g, k)? != *target {
                return Err(FabfError::Defect(format!("Brinkmann witness {k} failed re-verification")));
            }
            Ok(TriState::Yes { k, logs: Some(LogSet::AP { k0: k, p: lp * p }) })
        }
    }
}

/// Dispatches on the homomorphism type; type II endomorphisms are rejected.
pub fn fabf_brinkmann(h: &Hom, g: &Element, target: &Element, cfg: &BrinkmannConfig) -> Result<TriState> {
    match h {
        Hom::TypeI(h) => fabf_brinkmann_type_i(h, g, target, cfg),
        Hom::TypeII(_) => {
            Err(FabfError::Unsupported("Brinkmann problems are only decided for type I endomorphisms".into()))
        }
    }
}

/// The `p ≥ 0` with `{k : gΦ^k = g} = pN`.
pub fn element_period(h: &TypeIHom, g: &Element, cfg: &BrinkmannConfig) -> Result<Period> {
    let image = h.apply(g)?;
    Ok(match fabf_brinkmann_type_i(h, &image, g, cfg)? {
        TriState::Yes { k, .. } => Period::Known(k + 1),
        TriState::No(_) => Period::Known(0),
        TriState::Undecided { bound } => Period::Undecided { bound },
    })
}
