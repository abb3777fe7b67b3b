//! Seeded random generation of nilpotent compatible Lie algebras.
//!
//! The generator climbs a chain of central extensions from dimension zero,
//! picking an arbitrary cocycle (admissible or not) at each step. Central
//! extensions of nilpotent algebras are nilpotent, so the output always is,
//! and it always verifies. Identical seeds replay identical algebras.

use alloc::vec;

use crate::algebra::CompatibleLieAlgebra;
use crate::cohomology::{cocycle_space, ScalarCocycle, VectorCocycle};
use crate::error::{Error, Result};
use crate::extension::{central_extension, ExtensionSpec};
use crate::field::{Field, Scalar};

/// Small deterministic PRNG (xorshift64*), good enough for fuzzing inputs.
#[derive(Clone, Debug)]
pub struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    pub fn new(seed: u64) -> XorShift64 {
        XorShift64 { state: seed.max(1) }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    pub fn scalar(&mut self, field: &Field) -> Scalar {
        match field {
            Field::Prime(p) => field.from_i64(self.below(*p) as i64),
            // small integers keep rational structure constants readable
            Field::Rationals => field.from_i64(self.below(7) as i64 - 3),
        }
    }
}

const DIM_BOUND: usize = 8;

/// A random nilpotent compatible Lie algebra of the exact given dimension.
pub fn random_nilpotent(dim: usize, field: Field, seed: u64) -> Result<CompatibleLieAlgebra> {
    if dim > DIM_BOUND {
        return Err(Error::ResourceBound(alloc::format!(
            "random generation capped at dimension {DIM_BOUND}"
        )));
    }
    let mut rng = XorShift64::new(seed);
    let mut g = CompatibleLieAlgebra::abelian(field, 0);
    while g.dim() < dim {
        let basis = cocycle_space(&g);
        let omega = if basis.is_empty() {
            ScalarCocycle::zero(field, g.dim())
        } else {
            let mut acc = ScalarCocycle::zero(field, g.dim());
            for b in &basis {
                acc = acc.add(&b.scale(&rng.scalar(&field)))?;
            }
            acc
        };
        let spec = ExtensionSpec::new(g, VectorCocycle::assemble(vec![omega])?)?;
        g = central_extension(&spec)?;
    }
    Ok(g)
}
