use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use core::fmt::Write;

use crate::algebra::ExponentVector;
use crate::degeneration::FamilyPresentation;
use crate::okounkov::SagbiDatum;
use crate::{Error, Result};

/// Enumeration guard for [`enumerate_vd_basis`].
pub const MAX_BASIS_ENTRIES: usize = 1_000_000;

/// One monomial `∏ x_ij^{α_ij}` of weighted degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VdEntry {
    pub alpha: Vec<u32>,
    /// `λ_α = Σ α_ij u_ij`.
    pub torus_weight: ExponentVector,
    /// `ω_α = Σ α_ij w_ij`.
    pub cstar_weight: i64,
}

/// Weight basis of `V_d`: the coordinates of the big projective space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VdBasis {
    degree: u32,
    symbols: Vec<String>,
    entries: Vec<VdEntry>,
}

impl VdBasis {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn entries(&self) -> &[VdEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.entries.first().map_or(0, |e| e.torus_weight.len())
    }

    /// Whether every entry is a single generator, so basis coordinates are
    /// generator coordinates.
    pub fn is_linear(&self) -> bool {
        self.entries.iter().all(|e| e.alpha.iter().sum::<u32>() == 1)
    }

    /// Canonical text form, one entry per line; stable input for hashing.
    pub fn descriptor(&self) -> String {
        let mut s = format!("d={} symbols={}\n", self.degree, self.symbols.join(","));
        for e in &self.entries {
            let a: Vec<String> = e.alpha.iter().map(|x| format!("{x}")).collect();
            let _ = writeln!(s, "[{}] {} {}", a.join(","), e.torus_weight, e.cstar_weight);
        }
        s
    }
}

/// `r!` for the largest generator level `r`.
pub fn default_degree(datum: &SagbiDatum) -> u32 {
    (1..=datum.max_level()).product()
}

/// Every multi-index `α` with `Σ_i i·Σ_j α_ij = d`, in descending lex order.
pub fn enumerate_vd_basis(datum: &SagbiDatum, fam: &FamilyPresentation, d: u32) -> Result<VdBasis> {
    if d == 0 {
        return Err(Error::InvalidDatum("the embedding degree must be positive".into()));
    }
    let gens = datum.generators();
    if let Some(g) = gens.iter().find(|g| !d.is_multiple_of(g.level)) {
        return Err(Error::InvalidDatum(format!(
            "degree {d} is not divisible by the generator level {}",
            g.level
        )));
    }
    let levels: Vec<u32> = gens.iter().map(|g| g.level).collect();
    let mut alphas = Vec::new();
    let mut cur = vec![0u32; gens.len()];
    fill(&levels, 0, d, &mut cur, &mut alphas)?;
    let weights = fam.weights();
    let n = datum.rank();
    let entries = alphas
        .into_iter()
        .map(|alpha| {
            let mut lam = ExponentVector::zero(n);
            let mut om = 0i64;
            for ((&a, g), &w) in alpha.iter().zip(gens).zip(weights) {
                if a > 0 {
                    lam = &lam + &g.value.scaled(a as i64);
                    om += a as i64 * w;
                }
            }
            VdEntry {
                alpha,
                torus_weight: lam,
                cstar_weight: om,
            }
        })
        .collect();
    Ok(VdBasis {
        degree: d,
        symbols: datum.symbols().vars().to_vec(),
        entries,
    })
}

fn fill(levels: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) -> Result<()> {
    if i == levels.len() {
        if left == 0 {
            if out.len() >= MAX_BASIS_ENTRIES {
                return Err(Error::TooLarge(format!(
                    "V_d basis exceeds {MAX_BASIS_ENTRIES} entries"
                )));
            }
            out.push(cur.clone());
        }
        return Ok(());
    }
    for c in (0..=left / levels[i]).rev() {
        cur[i] = c;
        fill(levels, i + 1, left - c * levels[i], cur, out)?;
    }
    cur[i] = 0;
    Ok(())
}
