//! Dense polynomials over a prime field, coefficients stored low degree first.
//!
//! Only what field construction needs: reduction, modular powering, gcd,
//! Rabin's irreducibility test, primitivity and the Conway polynomial search.

pub(crate) type Poly = Vec<u32>;

fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and small, Fermat is enough
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = (a % p) as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    a = acc as u32;
    a
}

pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Poly {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let shift = r.len() - 1 - df;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &fc) in f.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - c * fc % p) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, f, p)
}

pub(crate) fn pow_mod_poly(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    rem(&acc, f, p)
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let len = a.len().max(b.len());
    let mut out = vec![0u32; len];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut a: Poly = a.to_vec();
    let mut b: Poly = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && prime_factors(n as u64) == vec![n as u64]
}

/// Rabin's test for a monic polynomial of degree m >= 1.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let q = p as u64;
    let frob = |k: usize| -> Poly {
        let mut r = x.clone();
        for _ in 0..k {
            r = pow_mod_poly(&r, q, f, p);
        }
        r
    };
    if sub(&frob(m), &x, p) != Vec::<u32>::new() {
        return false;
    }
    for r in prime_factors(m as u64) {
        let h = sub(&frob(m / r as usize), &x, p);
        let g = gcd(f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Whether the class of x generates the multiplicative group of F_p[x]/(f).
pub(crate) fn is_primitive(f: &[u32], p: u32) -> bool {
    if !is_irreducible(f, p) {
        return false;
    }
    let m = (f.len() - 1) as u32;
    let order = (p as u64).pow(m) - 1;
    let x: Poly = vec![0, 1];
    if rem(&x, f, p).is_empty() {
        return false;
    }
    prime_factors(order).into_iter().all(|l| pow_mod_poly(&x, order / l, f, p) != vec![1])
}

fn eval_in(f: &[u32], root: &[u32], modulus: &[u32], p: u32) -> Poly {
    // Horner, coefficients of f live in F_p
    let mut acc: Poly = Vec::new();
    for &c in f.iter().rev() {
        acc = mul_mod(&acc, root, modulus, p);
        let mut with_c = acc.clone();
        if with_c.is_empty() {
            with_c.push(0);
        }
        with_c[0] = (with_c[0] + c) % p;
        trim(&mut with_c);
        acc = with_c;
    }
    acc
}

/// Lexicographically least primitive polynomial in the Conway ordering that is
/// compatible with the Conway polynomials of every proper subfield.
pub(crate) fn conway(p: u32, m: u32, lower: &dyn Fn(u32) -> Poly) -> Poly {
    let total = (p as u64).pow(m);
    let order = total - 1;
    let divisors: Vec<u32> = (1..m).filter(|d| m.is_multiple_of(*d)).collect();
    let subfield_polys: Vec<(u32, Poly)> = divisors.iter().map(|&d| (d, lower(d))).collect();
    for idx in 0..total {
        // digits a_{m-1} .. a_0, most significant first
        let mut a = vec![0u32; m as usize];
        let mut rest = idx;
        for i in 0..m as usize {
            a[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        // a[0] is a_0 (least significant of the counter is the constant term)
        let mut f = vec![0u32; m as usize + 1];
        f[m as usize] = 1;
        for i in 0..m as usize {
            let sign_negative = (m as usize - i) % 2 == 1;
            f[i] = if sign_negative { (p - a[i]) % p } else { a[i] };
        }
        if f[0] == 0 || !is_primitive(&f, p) {
            continue;
        }
        let x: Poly = vec![0, 1];
        let compatible = subfield_polys.iter().all(|(d, g)| {
            let e = order / ((p as u64).pow(*d) - 1);
            let root = pow_mod_poly(&x, e, &f, p);
            eval_in(g, &root, &f, p).is_empty()
        });
        if compatible {
            return f;
        }
    }
    unreachable!("a Conway polynomial exists for every prime power")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rabin_detects_reducible() {
        // x^2 + 1 over F_2 = (x+1)^2
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 1], 2));
        // x^2 + 1 irreducible over F_3, but not primitive
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_primitive(&[1, 0, 1], 3));
        assert!(is_primitive(&[2, 2, 1], 3));
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(24), vec![2, 3]);
        assert_eq!(prime_factors(65535), vec![3, 5, 17, 257]);
        assert!(is_prime(257));
        assert!(!is_prime(1));
    }
}
