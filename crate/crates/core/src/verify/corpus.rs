//! Seeded random operands for every identity.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::RngCore;

use super::{IdentityId, Level, Operands, Version};
use crate::algebra::{build_algebra, examples, opposite_algebra, Algebra};
use crate::bimodule::{bimodule_algebra, Bimodule};
use crate::complex::{random_chain_endomorphism, random_complex, BimoduleComplex, Complex};
use crate::error::Result;
use crate::linalg::FieldSpec;
use crate::module::{random_endomorphism, random_module};
use crate::quiver::Presentation;
use crate::random::seeded;

const MODULE_BUDGET: usize = 3;
const COMPLEX_BUDGET: usize = 2;

/// The side algebras used for bimodule operands: the field and `A_2`.
pub fn partner_algebras(f: FieldSpec) -> Result<Vec<Arc<Algebra>>> {
    [examples::field_algebra(f), examples::a2(f)]
        .iter()
        .map(|p| Ok(Arc::new(build_algebra(p)?)))
        .collect()
}

type PairCache = Mutex<HashMap<(Presentation, Presentation), Arc<Algebra>>>;

fn pair_cache() -> &'static PairCache {
    static CACHE: OnceLock<PairCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_bimodule_algebra(left: &Algebra, right: &Algebra) -> Result<Arc<Algebra>> {
    let key = (left.presentation().clone(), right.presentation().clone());
    if let Some(x) = pair_cache().lock().expect("cache poisoned").get(&key) {
        return Ok(x.clone());
    }
    let x = bimodule_algebra(left, right)?;
    pair_cache().lock().expect("cache poisoned").insert(key, x.clone());
    Ok(x)
}

fn cached_opposite(a: &Algebra) -> Result<Arc<Algebra>> {
    static CACHE: OnceLock<Mutex<HashMap<Presentation, Arc<Algebra>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = a.presentation().clone();
    if let Some(x) = cache.lock().expect("cache poisoned").get(&key) {
        return Ok(x.clone());
    }
    let x = opposite_algebra(a)?;
    cache.lock().expect("cache poisoned").insert(key, x.clone());
    Ok(x)
}

fn complex(a: &Arc<Algebra>, rng: &mut impl RngCore) -> Arc<Complex> {
    let lo = (rng.next_u64() % 3) as i64 - 1;
    let len = 1 + (rng.next_u64() % 3) as usize;
    Arc::new(random_complex(a, rng.next_u64(), lo, len, COMPLEX_BUDGET))
}

/// Random operands for `id` over `A`, deterministic in `seed`. Lefschetz identities get
/// random endomorphisms, HRR identities none.
pub fn random_operands(id: &IdentityId, a: &Arc<Algebra>, seed: u64) -> Result<Operands> {
    let mut rng = seeded(seed);
    let lef = id.flavor == super::Flavor::Lefschetz;
    let partners = partner_algebras(a.field())?;
    let partner = |rng: &mut rand_chacha::ChaCha8Rng| partners[(rng.next_u64() % partners.len() as u64) as usize].clone();
    Ok(match id.level {
        Level::Module if id.version.is_hochschild() => {
            let env = cached_bimodule_algebra(a, a)?;
            let m = Bimodule::new(a.clone(), a.clone(), random_module(&env, rng.next_u64(), MODULE_BUDGET))?;
            let phi = lef.then(|| random_endomorphism(m.module(), rng.next_u64()));
            Operands::Bimodule { m, phi }
        }
        Level::Module => {
            let m = random_module(a, rng.next_u64(), MODULE_BUDGET);
            let over = if id.version == Version::Cohomological { a.clone() } else { cached_opposite(a)? };
            let n = random_module(&over, rng.next_u64(), MODULE_BUDGET);
            let phi = lef.then(|| random_endomorphism(&m, rng.next_u64()));
            let psi = lef.then(|| random_endomorphism(&n, rng.next_u64()));
            Operands::Modules { m, n, phi, psi }
        }
        Level::Bimodule => {
            let b = partner(&mut rng);
            let c = partner(&mut rng);
            let m = Bimodule::new(
                b.clone(),
                a.clone(),
                random_module(&cached_bimodule_algebra(&b, a)?, rng.next_u64(), MODULE_BUDGET),
            )?;
            let n = if id.version == Version::Cohomological {
                let env = cached_bimodule_algebra(&c, a)?;
                Bimodule::new(c, a.clone(), random_module(&env, rng.next_u64(), MODULE_BUDGET))?
            } else {
                let env = cached_bimodule_algebra(a, &c)?;
                Bimodule::new(a.clone(), c, random_module(&env, rng.next_u64(), MODULE_BUDGET))?
            };
            let phi = lef.then(|| random_endomorphism(m.module(), rng.next_u64()));
            let psi = lef.then(|| random_endomorphism(n.module(), rng.next_u64()));
            Operands::Bimodules { m, n, phi, psi }
        }
        Level::Complex if id.version.is_hochschild() => {
            let env = cached_bimodule_algebra(a, a)?;
            let m = BimoduleComplex::new(a.clone(), a.clone(), complex(&env, &mut rng))?;
            let phi = lef.then(|| random_chain_endomorphism(m.complex(), rng.next_u64()));
            Operands::BimoduleComplex { m, phi }
        }
        Level::Complex => {
            let m = complex(a, &mut rng);
            let over = if id.version == Version::Cohomological { a.clone() } else { cached_opposite(a)? };
            let n = complex(&over, &mut rng);
            let phi = lef.then(|| random_chain_endomorphism(&m, rng.next_u64()));
            let psi = lef.then(|| random_chain_endomorphism(&n, rng.next_u64()));
            Operands::Complexes { m, n, phi, psi }
        }
        Level::BimoduleComplex => {
            let b = partner(&mut rng);
            let c = partner(&mut rng);
            let m = BimoduleComplex::new(b.clone(), a.clone(), complex(&cached_bimodule_algebra(&b, a)?, &mut rng))?;
            let n = if id.version == Version::Cohomological {
                BimoduleComplex::new(c.clone(), a.clone(), complex(&cached_bimodule_algebra(&c, a)?, &mut rng))?
            } else {
                BimoduleComplex::new(a.clone(), c.clone(), complex(&cached_bimodule_algebra(a, &c)?, &mut rng))?
            };
            let phi = lef.then(|| random_chain_endomorphism(m.complex(), rng.next_u64()));
            let psi = lef.then(|| random_chain_endomorphism(n.complex(), rng.next_u64()));
            Operands::BimoduleComplexes { m, n, phi, psi }
        }
    })
}
