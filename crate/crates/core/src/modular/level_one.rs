use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;

use super::datum::{Label, ModularDatum};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::math::{self, q, Q};

/// Level-one theories whose modular data are given by closed-form tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelOne {
    /// `SU(m)_1`, labels `y0 .. y{m-1}`.
    Su(usize),
    /// `Spin(N)_1`, labels `1, v, s` (odd `N`) or `1, v, s, c` (even `N`).
    Spin(usize),
    /// `(E6)_1`, labels `1, 1+, 1-`.
    E6,
}

/// A pointed theory: every label is a simple current, the fusion ring is
/// the group algebra of `Z_{n_1} x ... x Z_{n_r}`, and `S` is fixed by the
/// quadratic form `h` through `S_ab = exp(-2 pi i b(a,b)) / sqrt|G|`.
struct Pointed {
    orders: Vec<u32>,
    elements: Vec<Vec<u32>>,
    labels: Vec<String>,
    h: Vec<Q>,
}

impl Pointed {
    fn position(&self, g: &[u32]) -> usize {
        self.elements.iter().position(|e| e.as_slice() == g).expect("group closed")
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let g: Vec<u32> =
            self.elements[a].iter().zip(&self.elements[b]).zip(&self.orders).map(|((x, y), n)| (x + y) % n).collect();
        self.position(&g)
    }

    fn neg(&self, a: usize) -> usize {
        let g: Vec<u32> = self.elements[a].iter().zip(&self.orders).map(|(x, n)| (n - x) % n).collect();
        self.position(&g)
    }

    fn into_datum(self, name: String, c: Q) -> Result<ModularDatum> {
        let size = self.elements.len();
        let norm = 1.0 / math::sqrt(size as f64);
        let s = CMatrix::from_fn(size, size, |a, b| {
            let form = self.h[self.add(a, b)] - self.h[a] - self.h[b];
            math::phase(-form) * Complex64::new(norm, 0.0)
        });
        let conj = (0..size).map(|a| self.neg(a)).collect();
        let labels = self.labels.into_iter().map(Label::Named).collect();
        ModularDatum::from_parts(name, labels, self.h, c, s, conj)
    }
}

impl LevelOne {
    /// Parses `su5_1`, `spin7_1`, `so7_1` or `e6_1`.
    pub fn parse(name: &str) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        let body = lower
            .strip_suffix("_1")
            .ok_or_else(|| Error::Unsupported(format!("{name}: only level-one tables are built in")))?;
        let num = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Unsupported(format!("{name}: unrecognised level-one theory")))
        };
        if body == "e6" {
            Ok(LevelOne::E6)
        } else if let Some(m) = body.strip_prefix("su") {
            Ok(LevelOne::Su(num(m)?))
        } else if let Some(n) = body.strip_prefix("spin").or_else(|| body.strip_prefix("so")) {
            Ok(LevelOne::Spin(num(n)?))
        } else {
            Err(Error::Unsupported(format!("{name}: unrecognised level-one theory")))
        }
    }

    pub fn name(&self) -> String {
        match self {
            LevelOne::Su(m) => format!("SU({m})_1"),
            LevelOne::Spin(n) => format!("Spin({n})_1"),
            LevelOne::E6 => "(E6)_1".to_string(),
        }
    }

    pub fn central_charge(&self) -> Q {
        match *self {
            LevelOne::Su(m) => q(m as i64 - 1, 1),
            LevelOne::Spin(n) => q(n as i64, 2),
            LevelOne::E6 => q(6, 1),
        }
    }

    /// Exact global dimension: the group order for pointed theories, 4 for
    /// odd `Spin(N)_1`.
    pub fn mu(&self) -> Q {
        match *self {
            LevelOne::Su(m) => q(m as i64, 1),
            LevelOne::Spin(_) => q(4, 1),
            LevelOne::E6 => q(3, 1),
        }
    }

    pub fn datum(&self) -> Result<ModularDatum> {
        let c = self.central_charge();
        match *self {
            LevelOne::Su(m) => {
                if m < 2 {
                    return Err(Error::Unsupported(format!("SU({m})_1")));
                }
                let mi = m as i64;
                Pointed {
                    orders: alloc::vec![m as u32],
                    elements: (0..m as u32).map(|j| alloc::vec![j]).collect(),
                    labels: (0..m).map(|j| format!("y{j}")).collect(),
                    h: (0..mi).map(|j| q(j * (mi - j), 2 * mi)).collect(),
                }
                .into_datum(self.name(), c)
            }
            LevelOne::E6 => Pointed {
                orders: alloc::vec![3],
                elements: (0..3).map(|j| alloc::vec![j]).collect(),
                labels: ["1", "1+", "1-"].iter().map(|s| s.to_string()).collect(),
                h: alloc::vec![q(0, 1), q(2, 3), q(2, 3)],
            }
            .into_datum(self.name(), c),
            LevelOne::Spin(n) if n >= 3 && n % 2 == 1 => odd_spin(n, c, self.name()),
            LevelOne::Spin(n) if n >= 4 && n % 2 == 0 => {
                let spinor = q(n as i64, 16);
                let labels = ["1", "v", "s", "c"].iter().map(|s| s.to_string()).collect();
                let h = alloc::vec![q(0, 1), q(1, 2), spinor, spinor];
                let (orders, elements) = if n % 4 == 2 {
                    (alloc::vec![4], alloc::vec![alloc::vec![0], alloc::vec![2], alloc::vec![1], alloc::vec![3]])
                } else {
                    (
                        alloc::vec![2, 2],
                        alloc::vec![alloc::vec![0, 0], alloc::vec![1, 1], alloc::vec![1, 0], alloc::vec![0, 1]],
                    )
                };
                Pointed { orders, elements, labels, h }.into_datum(self.name(), c)
            }
            LevelOne::Spin(n) => Err(Error::Unsupported(format!("Spin({n})_1"))),
        }
    }
}

/// Ising-type data of odd `Spin(N)_1`.
fn odd_spin(n: usize, c: Q, name: String) -> Result<ModularDatum> {
    let r = math::sqrt(2.0);
    let rows = [[1.0, 1.0, r], [1.0, 1.0, -r], [r, -r, 0.0]];
    let s = CMatrix::from_fn(3, 3, |i, j| Complex64::new(rows[i][j] / 2.0, 0.0));
    let labels = ["1", "v", "s"].iter().map(|s| Label::Named(s.to_string())).collect();
    let h = alloc::vec![q(0, 1), q(1, 2), q(n as i64, 16)];
    ModularDatum::from_parts(name, labels, h, c, s, alloc::vec![0, 1, 2])
}
