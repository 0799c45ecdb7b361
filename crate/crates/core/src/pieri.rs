//! Pieri–Chevalley structure constants for the semi-infinite flag manifold,
//! truncated in the `q`-degree, and the character identity that certifies
//! them.
//!
//! For dominant `lambda` and `x in W_af^{>=0}` the product of the line
//! bundle class `[O(lambda)]` with the Schubert class of `x` expands as
//! `sum_y f_y [O_{Q(y)}]`, where `f_y` collects `e^{fwt(eta)} q^{qwt(eta)}`
//! over the paths `eta in SiLS_{⪰x}(-w0 lambda)` with `Deo(eta, x) = y`.
//! The expansion is equivalent to the character identity
//! `gch V_x^-(-w0(lambda + mu)) = sum_y f_y gch V_y^-(-w0 mu)` for all
//! sufficiently dominant `mu`.

use std::collections::{BTreeMap, HashMap};

use crate::afweyl::AffineWeylElement;
use crate::error::{input, precondition, Error, Result};
use crate::gchar::{CharComparison, GradedCharacter};
use crate::rootdata::{pair, CartanDatum, Weight};

/// A finite truncation of `[O(lambda)] * [O_{Q(x)}]`: Schubert classes
/// indexed by `W_af^{>=0}` with coefficients in `Z[P]((q^{-1}))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KClassCombo {
    /// The `lambda` of `[O(lambda)]`.
    pub base_twist: Weight,
    /// Lowest `q`-degree that is known exactly in every coefficient.
    pub q_min: i64,
    pub terms: BTreeMap<AffineWeylElement, GradedCharacter>,
}

impl KClassCombo {
    /// Sum of all coefficients (the ungrouped character).
    pub fn total(&self) -> GradedCharacter {
        self.terms.values().fold(GradedCharacter::zero(self.q_min), |acc, g| &acc + g)
    }

    /// The `q`-degree `k` part of every coefficient, dropping keys whose
    /// part vanishes.
    pub fn layer(&self, k: i64) -> BTreeMap<AffineWeylElement, crate::gchar::GroupAlgebraElement> {
        self.terms
            .iter()
            .map(|(y, g)| (y.clone(), g.layer(k)))
            .filter(|(_, g)| !g.is_zero())
            .collect()
    }
}

/// Result of [`CartanDatum::verify_pieri`].
#[derive(Debug, Clone)]
pub struct PieriReport {
    /// Number of Schubert classes in the expansion.
    pub keys: usize,
    pub character: CharComparison,
}

impl PieriReport {
    pub fn passed(&self) -> bool {
        self.character.passed()
    }
}

impl CartanDatum {
    fn check_pieri_input(&self, lambda: &[i64], x: &AffineWeylElement) -> Result<()> {
        self.check_len(lambda)?;
        self.check_len(&x.xi)?;
        if !self.is_dominant(lambda) {
            return input("lambda must be dominant");
        }
        if !self.is_w_af_ge0(x) {
            return precondition("x must lie in W_af^{>=0} (translation part in Q^{vee,+})");
        }
        Ok(())
    }

    /// The Pieri–Chevalley coefficients of `[O(lambda)] * [O_{Q(x)}]` on the
    /// window `q >= q_min`.
    pub fn pieri_coeffs(&self, lambda: &[i64], x: &AffineWeylElement, q_min: i64) -> Result<KClassCombo> {
        self.check_pieri_input(lambda, x)?;
        let shape = self.dual_weight(lambda);
        let mut terms: BTreeMap<AffineWeylElement, GradedCharacter> = BTreeMap::new();
        for eta in self.enumerate_sils(&shape, x, q_min)? {
            let y = self.deo(&eta, x)?;
            if !self.is_w_af_ge0(&y) {
                return Err(Error::Internal(format!("Pieri key {y:?} is not in W_af^{{>=0}}")));
            }
            let w = self.path_wt(&eta);
            terms.entry(y).or_insert_with(|| GradedCharacter::zero(q_min)).add_term(&w.finite, w.delta, 1);
        }
        terms.retain(|_, g| !g.is_zero());
        Ok(KClassCombo { base_twist: lambda.iter().copied().collect(), q_min, terms })
    }

    /// `sum_y f_y gch V_y^-(-w0 mu)` on the window of `combo`.
    pub fn pieri_character(&self, combo: &KClassCombo, mu: &[i64]) -> Result<GradedCharacter> {
        self.check_len(mu)?;
        if !self.is_dominant(mu) {
            return input("mu must be dominant");
        }
        let shape = self.dual_weight(mu);
        let j = self.stabilizer(&shape);
        let q_min = combo.q_min;
        let mut cache: HashMap<(AffineWeylElement, i64), GradedCharacter> = HashMap::new();
        let mut out = GradedCharacter::zero(q_min);
        for (y, coeff) in &combo.terms {
            let key = self.pij(y, j);
            for rec in coeff.records() {
                let window = q_min - rec.q;
                let g = match cache.get(&(key.clone(), window)) {
                    Some(g) => g.clone(),
                    None => {
                        let g = self.gch_demazure(&shape, &key, window)?;
                        cache.insert((key.clone(), window), g.clone());
                        g
                    }
                };
                out = &out + &g.mul_exact(&rec.weight, rec.q, rec.coeff);
            }
        }
        Ok(out)
    }

    /// Checks `gch V_x^-(-w0(lambda + mu)) = sum_y f_y gch V_y^-(-w0 mu)` on
    /// the window `q >= q_min`, with `f_y` from [`Self::pieri_coeffs`].
    pub fn verify_pieri(&self, lambda: &[i64], x: &AffineWeylElement, mu: &[i64], q_min: i64) -> Result<PieriReport> {
        self.check_pieri_input(lambda, x)?;
        let combo = self.pieri_coeffs(lambda, x, q_min)?;
        self.verify_pieri_combo(&combo, x, mu)
    }

    /// Checks the character identity for a given (possibly modified)
    /// expansion; used for negative controls.
    pub fn verify_pieri_combo(&self, combo: &KClassCombo, x: &AffineWeylElement, mu: &[i64]) -> Result<PieriReport> {
        let sum: Weight = combo.base_twist.iter().zip(mu).map(|(a, b)| a + b).collect();
        let left = self.gch_demazure(&self.dual_weight(&sum), x, combo.q_min)?;
        let right = self.pieri_character(combo, mu)?;
        Ok(PieriReport { keys: combo.terms.len(), character: CharComparison::new(left, right) })
    }

    /// The expansion at `x t_xi` predicted from the one at `x`: keys move by
    /// `t_xi` and coefficients pick up `q^{-<-w0 lambda, xi>}`.
    pub fn pieri_translate(&self, combo: &KClassCombo, xi: &[i64]) -> KClassCombo {
        let shift = -pair(&self.dual_weight(&combo.base_twist), xi);
        KClassCombo {
            base_twist: combo.base_twist.clone(),
            q_min: combo.q_min + shift,
            terms: combo
                .terms
                .iter()
                .map(|(y, g)| (self.right_translate(y, xi), g.shift_q(shift)))
                .collect(),
        }
    }
}
