//! Checks of a finished run against the wreath structure and the
//! divisibility of total windings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::perm::{Perm, PermutationGroup};
use super::run::{block_action, necklaces, MonodromyRun};
use crate::error::{Error, Result};
use crate::polytope::dot;
use crate::tuples::{essential_vectors, ReductionData};

#[derive(Clone, Debug, PartialEq)]
pub struct WreathReport {
    pub blocks: Vec<Vec<usize>>,
    /// `m`, the size of every block.
    pub block_size: usize,
    /// `d`, the number of blocks.
    pub block_count: usize,
    pub order: BigInt,
    /// `m^d · d!`.
    pub wreath_order: BigInt,
    /// Every generator respects the blocks and `|G|` divides `m^d · d!`.
    pub contained: bool,
    /// `m^d · d! / |G|` when contained.
    pub index: Option<BigInt>,
    /// Order of the induced action on blocks.
    pub block_action_order: BigInt,
    pub generators_even: bool,
}

/// Recomputes the necklaces from the reduction and checks every generator of
/// the run's group against them.
pub fn verify_wreath_structure(run: &MonodromyRun, reduction: &ReductionData) -> Result<WreathReport> {
    let xs: Vec<_> = run.roots.iter().map(|r| r.x.clone()).collect();
    let blocks = necklaces(reduction, &xs)?;
    let m = blocks[0].len();
    if blocks.iter().any(|b| b.len() != m) {
        return Err(Error::BlockStructureViolated("blocks have different sizes".into()));
    }
    let d = blocks.len();
    let mut images: Vec<Perm> = Vec::new();
    for g in run.group.generators() {
        let b = block_action(g, &blocks, &xs).map_err(Error::BlockStructureViolated)?;
        images.push(b);
    }
    let block_group = PermutationGroup::from_generators(d, &images);
    let order = run.group.order();
    let factorial: BigInt = (1..=d).map(BigInt::from).product();
    let wreath_order = BigInt::from(m).pow(d as u32) * factorial;
    let divides = (&wreath_order % &order).is_zero();
    Ok(WreathReport {
        blocks,
        block_size: m,
        block_count: d,
        index: divides.then(|| &wreath_order / &order),
        contained: divides,
        order,
        wreath_order,
        block_action_order: block_group.order(),
        generators_even: run.group.generators().iter().all(Perm::is_even),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonReport {
    pub b: Vec<i64>,
    /// `gcd_γ d_γ·(γ·b)` over the essential covectors of the run's tuple.
    pub modulus: i64,
    pub loops_checked: usize,
    /// `Σ_i winding_i · b` for each closed winding, in run order.
    pub totals: Vec<i64>,
}

/// Checks that the total `b`-winding of every identity-permutation loop is
/// divisible by `gcd_γ d_γ·(γ·b)`.
pub fn poisson_divisibility_check(run: &MonodromyRun, b: &[i64]) -> Result<PoissonReport> {
    if b.len() != run.tuple.dim() {
        return Err(Error::Malformed(format!("covector length {} in dimension {}", b.len(), run.tuple.dim())));
    }
    let ess = essential_vectors(&run.tuple)?;
    let modulus = ess
        .records
        .iter()
        .map(|r| r.d as i128 * dot(&r.gamma, b))
        .fold(0i128, |g, x| g.gcd(&x)) as i64;
    let mut totals = Vec::with_capacity(run.closed_windings.len());
    for c in &run.closed_windings {
        let total: i64 = c.winding.iter().map(|w| w.iter().zip(b).map(|(x, y)| x * y).sum::<i64>()).sum();
        let ok = if modulus == 0 { total == 0 } else { total % modulus == 0 };
        if !ok {
            return Err(Error::DivisibilityViolated { total, modulus });
        }
        totals.push(total);
    }
    Ok(PoissonReport { b: b.to_vec(), modulus, loops_checked: totals.len(), totals })
}
