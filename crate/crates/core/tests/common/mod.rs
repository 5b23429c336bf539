//! Reference computations written directly from the definitions, sharing
//! nothing with the library beyond its public types.

#![allow(dead_code)]

use num_complex::Complex64;

pub type C = Complex64;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Dense row-major complex matrix, kept separate from the library type.
pub type M = Vec<Vec<C>>;

pub fn zeros(n: usize) -> M {
    vec![vec![c(0.0, 0.0); n]; n]
}

pub fn matmul(a: &M, b: &M) -> M {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn kron_vec(a: &[C], b: &[C]) -> Vec<C> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

pub fn unit(n: usize, k: usize) -> Vec<C> {
    let mut v = vec![c(0.0, 0.0); n];
    v[k] = c(1.0, 0.0);
    v
}

/// One-photon mode vector for polarization `p` (0 = H) and frequency `f`
/// (0 = high).
pub fn mode(p: usize, f: usize) -> Vec<C> {
    kron_vec(&unit(2, p), &unit(2, f))
}

/// `(|a⟩|b⟩ + |b⟩|a⟩)/√2` in the two-photon product space.
pub fn symmetrized(a: &[C], b: &[C]) -> Vec<C> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    kron_vec(a, b).iter().zip(kron_vec(b, a)).map(|(x, y)| (x + y) * s).collect()
}

/// Ququart state from `(C1..C4)` built out of explicit tensor products.
pub fn ququart_vector(coeffs: [C; 4]) -> Vec<C> {
    // (polarization of the high-frequency photon, of the low-frequency photon)
    let labels = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let mut psi = vec![c(0.0, 0.0); 16];
    for (cf, (ph, pl)) in coeffs.iter().zip(labels) {
        for (acc, x) in psi.iter_mut().zip(symmetrized(&mode(ph, 0), &mode(pl, 1))) {
            *acc += cf * x;
        }
    }
    psi
}

/// `Tr_v |ψ⟩⟨ψ|` over one variable (`polarization` selects which) of both
/// photons; result indexed by the remaining pair `(v1, v2)`.
pub fn reduce_variable(psi: &[C], trace_polarization: bool) -> M {
    let amp = |p1: usize, f1: usize, p2: usize, f2: usize| psi[4 * (2 * p1 + f1) + (2 * p2 + f2)];
    let mut out = zeros(4);
    for a1 in 0..2 {
        for a2 in 0..2 {
            for b1 in 0..2 {
                for b2 in 0..2 {
                    let mut s = c(0.0, 0.0);
                    for t1 in 0..2 {
                        for t2 in 0..2 {
                            s += if trace_polarization {
                                amp(t1, a1, t2, a2) * amp(t1, b1, t2, b2).conj()
                            } else {
                                amp(a1, t1, a2, t2) * amp(b1, t1, b2, t2).conj()
                            };
                        }
                    }
                    out[2 * a1 + a2][2 * b1 + b2] = s;
                }
            }
        }
    }
    out
}

/// One-photon reduction of a 16-vector.
pub fn reduce_photon(psi: &[C]) -> M {
    let mut out = zeros(4);
    for a in 0..4 {
        for b in 0..4 {
            out[a][b] = (0..4).map(|k| psi[4 * a + k] * psi[4 * b + k].conj()).sum();
        }
    }
    out
}

/// Characteristic polynomial coefficients `[1, c1, ..., cn]` of
/// `det(λ − A)` by Faddeev–LeVerrier.
pub fn char_poly(a: &M) -> Vec<C> {
    let n = a.len();
    let mut coeffs = vec![c(1.0, 0.0)];
    let mut mk = zeros(n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I, with M_0 = 0, c_0 = 1.
        let mut next = matmul(a, &mk);
        for i in 0..n {
            next[i][i] += coeffs[k - 1];
        }
        mk = next;
        let am = matmul(a, &mk);
        let tr: C = (0..n).map(|i| am[i][i]).sum();
        coeffs.push(-tr / k as f64);
    }
    coeffs
}

fn horner(p: &[C], z: C) -> C {
    p.iter().fold(c(0.0, 0.0), |acc, &a| acc * z + a)
}

/// All roots of a monic polynomial by Durand–Kerner followed by Newton
/// polishing.
pub fn poly_roots(p: &[C]) -> Vec<C> {
    let n = p.len() - 1;
    let seed = c(0.4, 0.9);
    let mut z: Vec<C> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0_f64;
        for i in 0..n {
            let mut den = c(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = horner(p, z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-17 {
            break;
        }
    }
    let dp: Vec<C> = p[..n].iter().enumerate().map(|(i, &a)| a * (n - i) as f64).collect();
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = horner(&dp, *zi);
            if d.norm() > 1e-14 {
                *zi -= horner(p, *zi) / d;
            }
        }
    }
    z
}

/// Real eigenvalues of a Hermitian matrix via its characteristic polynomial,
/// descending.
pub fn eigenvalues_by_polynomial(a: &M) -> Vec<f64> {
    let mut ev: Vec<f64> = poly_roots(&char_poly(a)).iter().map(|z| z.re).collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev
}

/// Wootters concurrence from the roots of the characteristic polynomial of
/// `ρ (σy⊗σy) ρ* (σy⊗σy)`.
pub fn concurrence_by_polynomial(rho: &M) -> f64 {
    let i = c(0.0, 1.0);
    let y = [[c(0.0, 0.0), -i], [i, c(0.0, 0.0)]];
    let mut yy = zeros(4);
    for a in 0..4 {
        for b in 0..4 {
            yy[a][b] = y[a / 2][b / 2] * y[a % 2][b % 2];
        }
    }
    let conj: M = rho.iter().map(|r| r.iter().map(|z| z.conj()).collect()).collect();
    let flipped = matmul(&matmul(&yy, &conj), &yy);
    let r = matmul(rho, &flipped);
    // Exact zero roots of rank-deficient inputs are split off first: left in
    // the polynomial they come back as O(√ε) and survive another square root.
    // The count comes from the kernel of ρ, since ρρ̃ can have genuinely tiny
    // nonzero roots that a cutoff on its own coefficients would discard.
    let rho_poly = char_poly(rho);
    let zeros_found = rho_poly.iter().rev().take_while(|z| z.norm() < 1e-13).count().min(3);
    let mut p = char_poly(&r);
    p.truncate(p.len() - zeros_found);
    let mut mu: Vec<f64> = poly_roots(&p).iter().map(|z| z.re.max(0.0).sqrt()).collect();
    mu.extend(std::iter::repeat_n(0.0, zeros_found));
    mu.sort_by(|x, y| y.total_cmp(x));
    (mu[0] - mu[1] - mu[2] - mu[3]).max(0.0)
}

pub fn max_abs_diff(a: &M, b: &M) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Converts a library matrix into the oracle representation.
pub fn from_lib(m: &biphoton_core::linalg::CMatrix) -> M {
    let n = m.dim();
    (0..n).map(|i| (0..n).map(|j| m[(i, j)]).collect()).collect()
}

/// `{1 − |B−|², |B−|², 0, 0}` sorted descending, with
/// `B− = (C2 − C3)/√2`.
pub fn spectrum_law(coeffs: [C; 4]) -> Vec<f64> {
    let bm2 = ((coeffs[1] - coeffs[2]) / 2f64.sqrt()).norm_sqr();
    let mut v = vec![1.0 - bm2, bm2, 0.0, 0.0];
    v.sort_by(|x, y| y.total_cmp(x));
    v
}
