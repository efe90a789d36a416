use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::error::{domain, Result};

/// `γ_{i_1}(x_1) ⋯ γ_{i_m}(x_m)` in a divided power algebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DividedMonomial(pub Vec<u32>);

impl DividedMonomial {
    pub fn unit(m: usize) -> Self {
        DividedMonomial(vec![0; m])
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// `γ_I · γ_J = (Π_k binom(i_k + j_k, i_k)) γ_{I+J}`.
pub fn divided_power_multiply(
    a: &DividedMonomial,
    b: &DividedMonomial,
) -> Result<(u128, DividedMonomial)> {
    if a.0.len() != b.0.len() {
        return domain(format!(
            "divided monomials over {} and {} generators",
            a.0.len(),
            b.0.len()
        ));
    }
    let mut c = 1u128;
    let mut out = Vec::with_capacity(a.0.len());
    for (&i, &j) in a.0.iter().zip(&b.0) {
        c = c
            .checked_mul(binomial((i + j) as u64, i as u64))
            .ok_or_else(|| crate::Error::Domain("coefficient overflow".into()))?;
        out.push(i + j);
    }
    Ok((c, DividedMonomial(out)))
}
