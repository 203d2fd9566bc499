//! Independent oracles. Nothing here calls into the library's own formulas
//! for h, S or quantum dimensions; everything is recomputed from scratch so
//! the integration tests compare two implementations.

#![allow(dead_code)]

use std::f64::consts::PI;

use holonet_core::Q;
use num_complex::Complex64;

/// All Dynkin label vectors of `SU(n)_k`, i.e. `n - 1` non-negative
/// integers with sum at most `k`.
pub fn weights(n: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(left: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for a in 0..=budget {
            cur.push(a);
            rec(left - 1, budget - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n - 1, k, &mut Vec::new(), &mut out);
    out
}

/// Inverse Cartan matrix entry of `A_{n-1}`, times `n`.
fn inv_cartan_n(i: usize, j: usize, n: usize) -> i64 {
    let (a, b) = (i.min(j) as i64, i.max(j) as i64);
    a * (n as i64 - b)
}

/// `h = (l, l + 2 rho) / (2 (k + n))` through the inverse Cartan matrix.
pub fn h(labels: &[u32], n: usize, k: u32) -> Q {
    let mut num = 0i64;
    for (i, &li) in labels.iter().enumerate() {
        for (j, &lj) in labels.iter().enumerate() {
            num += li as i64 * (lj as i64 + 2) * inv_cartan_n(i + 1, j + 1, n);
        }
    }
    Q::new(num, 2 * n as i64 * (k as i64 + n as i64))
}

pub fn c(n: usize, k: u32) -> Q {
    let n = n as i64;
    let k = k as i64;
    Q::new(k * (n * n - 1), k + n)
}

/// Quantum dimension as a product of sines over positive roots.
pub fn qdim(labels: &[u32], n: usize, k: u32) -> f64 {
    let kn = (k as usize + n) as f64;
    let mut d = 1.0;
    for i in 0..n {
        for j in i + 1..n {
            let shifted: u32 = labels[i..j].iter().map(|l| l + 1).sum();
            let height = (j - i) as f64;
            d *= (PI * shifted as f64 / kn).sin() / (PI * height / kn).sin();
        }
    }
    d
}

pub fn mu(n: usize, k: u32) -> f64 {
    weights(n, k).iter().map(|w| qdim(w, n, k).powi(2)).sum()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i32)>) {
        if rest.is_empty() {
            let mut inv = 0;
            for a in 0..prefix.len() {
                for b in a + 1..prefix.len() {
                    if prefix[a] > prefix[b] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for idx in 0..rest.len() {
            let x = rest.remove(idx);
            prefix.push(x);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(idx, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// `l + rho` in orthonormal coordinates, centered.
fn shifted(labels: &[u32], n: usize) -> Vec<f64> {
    let mut x = vec![0.0; n];
    for i in 0..n {
        x[i] = labels[i..].iter().map(|&l| l as f64 + 1.0).sum();
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    x.iter().map(|v| v - mean).collect()
}

/// Kac-Peterson S as an explicit Weyl group sum, normalized by unitarity of
/// the vacuum row and positivity of `S_00`. Rows follow [`weights`].
pub fn s_weyl(n: usize, k: u32) -> Vec<Vec<Complex64>> {
    let ws = weights(n, k);
    let kn = (k as usize + n) as f64;
    let perms = permutations(n);
    let xs: Vec<Vec<f64>> = ws.iter().map(|w| shifted(w, n)).collect();
    let raw: Vec<Vec<Complex64>> = xs
        .iter()
        .map(|a| {
            xs.iter()
                .map(|b| {
                    perms
                        .iter()
                        .map(|(p, sign)| {
                            let dot: f64 = (0..n).map(|i| a[p[i]] * b[i]).sum();
                            Complex64::from_polar(*sign as f64, -2.0 * PI * dot / kn)
                        })
                        .sum()
                })
                .collect()
        })
        .collect();
    let norm: f64 = raw[0].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let phase = raw[0][0] / raw[0][0].norm();
    let scale = 1.0 / (phase * norm);
    raw.into_iter().map(|row| row.into_iter().map(|z| z * scale).collect()).collect()
}

/// `S_ab = sqrt(2/(k+2)) sin(pi (a+1)(b+1)/(k+2))`.
pub fn s_su2(k: u32, a: u32, b: u32) -> f64 {
    let kk = k as f64 + 2.0;
    (2.0 / kk).sqrt() * (PI * (a as f64 + 1.0) * (b as f64 + 1.0) / kk).sin()
}

/// Parses a product label "([..],y3,v)" into the bracketed WZW part and the
/// remaining level-one labels.
pub fn split_label(label: &str) -> (Vec<u32>, Vec<String>) {
    let inner = label.trim_start_matches('(').trim_end_matches(')');
    let close = inner.find(']').expect("weight part");
    let weight = inner[1..close].split(',').map(|x| x.parse().expect("integer")).collect();
    let rest = inner[close + 1..].split(',').filter(|s| !s.is_empty()).map(str::to_string).collect();
    (weight, rest)
}

/// Conformal weight of a level-one label, from the lattice description.
pub fn level_one_h(label: &str, factor: &str) -> Q {
    let (kind, size) = factor.split_at(factor.find(|c: char| c.is_ascii_digit()).unwrap_or(factor.len()));
    let size: i64 = size.trim_end_matches("_1").parse().unwrap_or(0);
    match (kind, label) {
        (_, "1") | (_, "y0") => Q::from_integer(0),
        ("su", y) => {
            let a: i64 = y[1..].parse().expect("y label");
            Q::new(a * (size - a), 2 * size)
        }
        ("spin", "v") => Q::new(1, 2),
        ("spin", "s" | "c") => Q::new(size, 16),
        ("e", _) => Q::new(2, 3),
        other => panic!("no oracle for {other:?}"),
    }
}

/// Quantum dimension of a level-one label.
pub fn level_one_dim(label: &str, factor: &str) -> f64 {
    let odd_spin =
        factor.starts_with("spin") && factor[4..].trim_end_matches("_1").parse::<u32>().is_ok_and(|n| n % 2 == 1);
    if odd_spin && (label == "s" || label == "sigma") {
        2f64.sqrt()
    } else {
        1.0
    }
}
