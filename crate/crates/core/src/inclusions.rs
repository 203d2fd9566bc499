//! The three conformal inclusions feeding the mirror constructions, with
//! their branching rules.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extensions::BranchingTable;
use crate::modular::{LevelOne, ModularDatum, SectorVector};
use crate::weights::AffineWeight;

/// Builtin inclusion names, as accepted by [`Inclusion::builtin`].
pub const INCLUSIONS: [&str; 3] = ["su2_10-spin5_1", "su3_9-e6_1", "su4_8-spin20_1"];

/// `G_k` inside a level-one theory, with the restriction of every ambient
/// sector.
#[derive(Debug)]
pub struct Inclusion {
    pub name: String,
    pub base: ModularDatum,
    pub ambient: ModularDatum,
    pub rows: Vec<SectorVector>,
}

fn orbit_sum(base: &ModularDatum, seeds: &[&[u32]]) -> Result<SectorVector> {
    let (n, k) = base.rank_level().expect("WZW base");
    let mut v = SectorVector::new();
    for seed in seeds {
        let w = AffineWeight::new(n, k, seed.to_vec())?;
        for i in 0..n as i64 {
            v.add(base.require_weight(&w.simple_current_pow(i))?, 1);
        }
    }
    Ok(v)
}

impl Inclusion {
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "su2_10-spin5_1" => {
                let base = ModularDatum::wzw(2, 10)?;
                let ambient = LevelOne::Spin(5).datum()?;
                let pair = |a: usize, b: usize| SectorVector::from_pairs([(a, 1), (b, 1)]);
                let rows = alloc::vec![pair(0, 6), pair(4, 10), pair(3, 7)];
                Ok(Self { name: name.into(), base, ambient, rows })
            }
            "su3_9-e6_1" => {
                let base = ModularDatum::wzw(3, 9)?;
                let ambient = LevelOne::E6.datum()?;
                let vac = orbit_sum(&base, &[&[0, 0], &[4, 4]])?;
                let charged = orbit_sum(&base, &[&[2, 2]])?;
                Ok(Self { name: name.into(), base, ambient, rows: alloc::vec![vac, charged.clone(), charged] })
            }
            "su4_8-spin20_1" => {
                let base = ModularDatum::wzw(4, 8)?;
                let ambient = LevelOne::Spin(20).datum()?;
                let vac = orbit_sum(&base, &[&[0, 0, 0], &[1, 2, 1]])?;
                let vector = orbit_sum(&base, &[&[0, 2, 0], &[0, 3, 2]])?;
                let spinor = orbit_sum(&base, &[&[1, 1, 3]])?;
                Ok(Self { name: name.into(), base, ambient, rows: alloc::vec![vac, vector, spinor.clone(), spinor] })
            }
            other => Err(Error::Usage(format!("unknown inclusion {other:?}; known: {}", INCLUSIONS.join(", ")))),
        }
    }

    /// The vacuum restriction, i.e. the extension spectrum.
    pub fn spectrum(&self) -> &SectorVector {
        &self.rows[0]
    }

    pub fn branching(&self) -> Result<BranchingTable<'_, ModularDatum>> {
        BranchingTable::new(&self.ambient, &self.base, self.rows.clone())
    }

    /// `(m, n)` of the base `SU(m)_n`.
    pub fn rank_level(&self) -> (usize, u32) {
        self.base.rank_level().expect("WZW base")
    }
}
