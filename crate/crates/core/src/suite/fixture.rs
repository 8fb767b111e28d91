//! A built instance: the algebroid, its chain and cochain complexes, the
//! quotients on which identities are stated, and the subcomplex `C•_M`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraAutomorphism, FinDimAlgebra, Group};
use crate::calculus::{Calculus, CalculusError};
use crate::complexes::{
    build_cochains, build_paracyclic_unchecked, quotient_complex, reduced_cochains, CochainComplex, ParaCyclicBundle,
    QuotientComplex, QuotientKind,
};
use crate::hopf::{HopfAlgebroid, ModuleComodule};
use crate::linalg::{kernel, Matrix, SVec, Subspace};
use crate::spaces::Cochain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpTag {
    Cap,
    Lie,
    S,
    Bullet(usize),
}

/// Input data of an instance before anything is built.
#[derive(Clone, Debug)]
pub struct InstanceData {
    pub name: String,
    pub h: HopfAlgebroid,
    pub m: ModuleComodule,
    /// `(A, σ)` when `U = A ⊗ A^op` with coefficients `A_σ`.
    pub hochschild: Option<(FinDimAlgebra, AlgebraAutomorphism)>,
    /// `G` when `U = kG` with trivial coefficients.
    pub group: Option<Group>,
    /// Highest chain degree built.
    pub n_build: usize,
    /// Highest cochain degree built.
    pub p_build: usize,
}

pub struct Fixture {
    pub data: InstanceData,
    pub bundle: ParaCyclicBundle,
    pub cochains: CochainComplex,
    pub cyclic: QuotientComplex,
    pub reduced: QuotientComplex,
    pub reduced_cyclic: QuotientComplex,
    /// `C^p_M` in cochain coordinates.
    pub cm: Vec<Subspace>,
    /// Normalised cochains in `C^p_M`.
    pub cm_bar: Vec<Subspace>,
    cache: Mutex<HashMap<(OpTag, usize, usize, usize), Arc<Matrix>>>,
}

impl Fixture {
    pub fn build(data: InstanceData) -> Result<Fixture, CalculusError> {
        let bundle = build_paracyclic_unchecked(&data.h, &data.m, data.n_build);
        let cochains = build_cochains(&data.h, data.p_build);
        let cyclic = quotient_complex(&bundle, QuotientKind::Cyclic);
        let reduced = quotient_complex(&bundle, QuotientKind::Reduced);
        let reduced_cyclic = quotient_complex(&bundle, QuotientKind::ReducedCyclic);
        let mut cm = Vec::new();
        let mut cm_bar = Vec::new();
        {
            let calc = Calculus::new(&bundle, &cochains);
            for p in 0..=data.p_build {
                let s = calc.cochain_subcomplex_cm(p, &cyclic)?;
                cm_bar.push(s.intersection(&reduced_cochains(&data.h, &cochains.spaces[p])));
                cm.push(s);
            }
        }
        Ok(Fixture {
            data,
            bundle,
            cochains,
            cyclic,
            reduced,
            reduced_cyclic,
            cm,
            cm_bar,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn calc(&self) -> Calculus<'_> {
        Calculus::new(&self.bundle, &self.cochains)
    }

    pub fn n_build(&self) -> usize {
        self.bundle.n_max()
    }

    pub fn p_build(&self) -> usize {
        self.cochains.spaces.len() - 1
    }

    pub fn is_sayd(&self) -> bool {
        self.bundle.flags.is_ayd && self.bundle.flags.is_stable
    }

    pub fn cochain(&self, p: usize, coords: &SVec) -> Cochain {
        self.cochains.spaces[p].cochain(coords.clone())
    }

    pub fn basis(&self, p: usize) -> Vec<Cochain> {
        self.cochains.spaces[p].basis()
    }

    /// Cocycles of `C^p_M`.
    pub fn cm_cocycles(&self, p: usize) -> Subspace {
        if p >= self.cochains.delta.len() {
            return Subspace::zero(self.cm[p].field(), self.cm[p].ambient_dim());
        }
        kernel(&self.cochains.delta[p]).intersection(&self.cm[p])
    }

    /// Chain operator of a cochain, assembled linearly from cached basis operators.
    pub fn op(&self, tag: OpTag, phi: &Cochain, n: usize) -> Result<Matrix, CalculusError> {
        let p = phi.degree;
        let dim = self.cochains.spaces[p].dim();
        let mut acc: Option<Matrix> = None;
        for k in 0..dim.max(1) {
            let basis = self.basis_op(tag, p, k, n)?;
            let c = phi.coords.get(k).cloned().unwrap_or_else(|| self.bundle.field().zero());
            let shaped = acc.unwrap_or_else(|| Matrix::zeros(basis.field(), basis.rows(), basis.cols()));
            acc = Some(if c.is_zero() { shaped } else { shaped.combine(&c, &basis) });
        }
        Ok(acc.expect("nonempty basis loop"))
    }

    fn basis_op(&self, tag: OpTag, p: usize, k: usize, n: usize) -> Result<Arc<Matrix>, CalculusError> {
        let key = (tag, p, k, n);
        if let Some(m) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(m.clone());
        }
        let calc = self.calc();
        let space = &self.cochains.spaces[p];
        let phi = if space.dim() == 0 { space.zero() } else { space.basis().swap_remove(k) };
        let m = Arc::new(match tag {
            OpTag::Cap => calc.cap(&phi, n)?,
            OpTag::Lie => calc.lie(&phi, n)?,
            OpTag::S => calc.s_op(&phi, n)?,
            OpTag::Bullet(i) => calc.bullet(&phi, n, i)?,
        });
        self.cache.lock().expect("cache lock").insert(key, m.clone());
        Ok(m)
    }
}

/// Spanning vectors of a subspace: its basis when `dim ≤ threshold`, else 32
/// seeded random integer combinations.
pub fn spanning(s: &Subspace, threshold: usize, seed: u64) -> Vec<SVec> {
    if s.dim() <= threshold {
        return s.basis().to_vec();
    }
    let f = s.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..32)
        .map(|_| {
            let mut v = SVec::new();
            for b in s.basis() {
                let c = rng.gen_range(-2i64..=2);
                if c != 0 {
                    v = v.axpy(&f.int(c), b);
                }
            }
            v
        })
        .collect()
}
