//! Word problem for finitely presented commutative monoids via pure-binomial
//! Groebner bases, and the integrality test for presentations.
//!
//! A presentation congruence corresponds to the pure-difference binomial
//! ideal I = (x^{u_i} - x^{v_i}); two words are congruent iff their
//! monomials share a normal form. Integrality holds iff I contains the full
//! lattice ideal of the groupification kernel, which is extracted with the
//! usual t*x_1*...*x_n - 1 saturation trick and an elimination order. All
//! answers are exact; caps on basis size and degree map to `Unknown`.

use crate::monoid::Tri;

type Expt = Vec<u64>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Order {
    GradedLex,
    /// variable 0 dominates (elimination order for the saturation variable)
    ElimFirst,
}

fn cmp_monomials(order: Order, a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    if order == Order::ElimFirst {
        match a[0].cmp(&b[0]) {
            Ordering::Equal => return cmp_monomials(Order::GradedLex, &a[1..], &b[1..]),
            other => return other,
        }
    }
    let da: u64 = a.iter().sum();
    let db: u64 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => a.cmp(b),
        other => other,
    }
}

/// Monic pure-difference binomial `x^lead - x^tail` with `lead > tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Binomial {
    lead: Expt,
    tail: Expt,
}

fn divides(d: &Expt, m: &Expt) -> bool {
    d.iter().zip(m).all(|(a, b)| a <= b)
}

#[derive(Clone, Copy, Debug)]
pub struct WordCaps {
    pub max_basis: usize,
    pub max_degree: u64,
    pub max_pairs: usize,
}

impl Default for WordCaps {
    fn default() -> Self {
        WordCaps {
            max_basis: 500,
            max_degree: 64,
            max_pairs: 20_000,
        }
    }
}

/// Reduce a monomial to its normal form modulo the basis. Terminates because
/// each step strictly decreases the monomial in the order.
fn normal_form(basis: &[Binomial], mut m: Expt) -> Expt {
    'outer: loop {
        for b in basis {
            if divides(&b.lead, &m) {
                for i in 0..m.len() {
                    m[i] = m[i] - b.lead[i] + b.tail[i];
                }
                continue 'outer;
            }
        }
        return m;
    }
}

fn orient(order: Order, a: Expt, b: Expt) -> Option<Binomial> {
    match cmp_monomials(order, &a, &b) {
        std::cmp::Ordering::Greater => Some(Binomial { lead: a, tail: b }),
        std::cmp::Ordering::Less => Some(Binomial { lead: b, tail: a }),
        std::cmp::Ordering::Equal => None,
    }
}

/// Buchberger completion restricted to binomials. `None` when a cap is hit.
fn groebner(order: Order, gens: Vec<(Expt, Expt)>, caps: &WordCaps) -> Option<Vec<Binomial>> {
    let mut basis: Vec<Binomial> = Vec::new();
    for (a, b) in gens {
        if let Some(bin) = orient(order, a, b) {
            basis.push(bin);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    let mut processed = 0usize;
    while let Some((i, j)) = pairs.pop() {
        processed += 1;
        if processed > caps.max_pairs {
            return None;
        }
        let (f, g) = (&basis[i], &basis[j]);
        let lcm: Expt = f
            .lead
            .iter()
            .zip(&g.lead)
            .map(|(&a, &b)| a.max(b))
            .collect();
        let sa: Expt = lcm
            .iter()
            .zip(&f.lead)
            .zip(&f.tail)
            .map(|((&l, &p), &t)| l - p + t)
            .collect();
        let sb: Expt = lcm
            .iter()
            .zip(&g.lead)
            .zip(&g.tail)
            .map(|((&l, &p), &t)| l - p + t)
            .collect();
        let na = normal_form(&basis, sa);
        let nb = normal_form(&basis, sb);
        let Some(new) = orient(order, na, nb) else {
            continue;
        };
        if new.lead.iter().sum::<u64>() > caps.max_degree {
            return None;
        }
        let k = basis.len();
        for idx in 0..k {
            pairs.push((idx, k));
        }
        basis.push(new);
        if basis.len() > caps.max_basis {
            return None;
        }
    }
    Some(basis)
}

/// Are the words `u`, `v` congruent under the relation congruence?
pub fn words_congruent(
    relations: &[(Vec<u64>, Vec<u64>)],
    u: &[u64],
    v: &[u64],
    caps: &WordCaps,
) -> Tri {
    let gens: Vec<(Expt, Expt)> = relations
        .iter()
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();
    let Some(basis) = groebner(Order::GradedLex, gens, caps) else {
        return Tri::Unknown;
    };
    let nu = normal_form(&basis, u.to_vec());
    let nv = normal_form(&basis, v.to_vec());
    if nu == nv {
        Tri::Yes
    } else {
        Tri::No
    }
}

/// Is the presented monoid integral (does it embed into its groupification)?
pub fn presentation_integral(
    n: usize,
    relations: &[(Vec<u64>, Vec<u64>)],
    caps: &WordCaps,
) -> Tri {
    let gens: Vec<(Expt, Expt)> = relations
        .iter()
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();
    let Some(basis) = groebner(Order::GradedLex, gens.clone(), caps) else {
        return Tri::Unknown;
    };

    // saturated (lattice) ideal: adjoin t with t*x_1*...*x_n = 1, eliminate t
    let mut sat_gens: Vec<(Expt, Expt)> = gens
        .iter()
        .map(|(a, b)| {
            let mut a2 = vec![0u64];
            a2.extend(a);
            let mut b2 = vec![0u64];
            b2.extend(b);
            (a2, b2)
        })
        .collect();
    sat_gens.push((vec![1u64; n + 1], vec![0u64; n + 1]));
    let Some(sat_basis) = groebner(Order::ElimFirst, sat_gens, caps) else {
        return Tri::Unknown;
    };

    for b in &sat_basis {
        if b.lead[0] != 0 || b.tail[0] != 0 {
            continue;
        }
        let lu = normal_form(&basis, b.lead[1..].to_vec());
        let lv = normal_form(&basis, b.tail[1..].to_vec());
        if lu != lv {
            return Tri::No;
        }
    }
    Tri::Yes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> WordCaps {
        WordCaps::default()
    }

    #[test]
    fn congruence_basic() {
        // x + y = y: x absorbs into y
        let rels = vec![(vec![1, 1], vec![0, 1])];
        assert_eq!(words_congruent(&rels, &[1, 2], &[0, 2], &caps()), Tri::Yes);
        assert_eq!(words_congruent(&rels, &[1, 0], &[0, 0], &caps()), Tri::No);
    }

    #[test]
    fn congruence_pyramid() {
        let rels = vec![(vec![1, 1, 0, 0], vec![0, 0, 1, 1])];
        assert_eq!(
            words_congruent(&rels, &[2, 2, 0, 0], &[0, 0, 2, 2], &caps()),
            Tri::Yes
        );
        assert_eq!(
            words_congruent(&rels, &[1, 0, 0, 0], &[0, 1, 0, 0], &caps()),
            Tri::No
        );
    }

    #[test]
    fn integrality_fixtures() {
        // free monoid
        assert_eq!(presentation_integral(2, &[], &caps()), Tri::Yes);
        // pyramid: binomial ideal is already a lattice ideal
        assert_eq!(
            presentation_integral(4, &[(vec![1, 1, 0, 0], vec![0, 0, 1, 1])], &caps()),
            Tri::Yes
        );
        // x + y = y is not cancellative
        assert_eq!(
            presentation_integral(2, &[(vec![1, 1], vec![0, 1])], &caps()),
            Tri::No
        );
        // x = y, x = 2y collapses only after integralization
        assert_eq!(
            presentation_integral(2, &[(vec![1, 0], vec![0, 1]), (vec![1, 0], vec![0, 2])], &caps()),
            Tri::No
        );
        // 2x = 2y is integral (image in Z + Z/2 is faithful)
        assert_eq!(
            presentation_integral(2, &[(vec![2, 0], vec![0, 2])], &caps()),
            Tri::Yes
        );
        // zero generators
        assert_eq!(presentation_integral(0, &[], &caps()), Tri::Yes);
    }

    /// Brute-force congruence closure oracle on a degree-bounded box.
    #[test]
    fn congruence_vs_closure_oracle() {
        let rels: Vec<(Vec<u64>, Vec<u64>)> =
            vec![(vec![2, 0], vec![0, 2]), (vec![1, 1], vec![1, 1])];
        let caps = caps();
        let deg = 5u64;
        // classes via union-find over all words of total degree <= deg
        let words: Vec<Vec<u64>> = (0..=deg)
            .flat_map(|a| (0..=(deg - a)).map(move |b| vec![a, b]))
            .collect();
        let idx = |w: &Vec<u64>| words.iter().position(|x| x == w);
        let mut parent: Vec<usize> = (0..words.len()).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        // closure: repeatedly apply u+c ~ v+c inside the box
        loop {
            let mut changed = false;
            for (u, v) in &rels {
                for w in &words {
                    if w.iter().zip(u).all(|(a, b)| a >= b) {
                        let shifted: Vec<u64> =
                            w.iter().zip(u).zip(v).map(|((a, b), c)| a - b + c).collect();
                        if let (Some(i), Some(j)) = (idx(w), idx(&shifted)) {
                            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                            if ri != rj {
                                parent[ri] = rj;
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        // low-degree words cannot be rewritten out of the box by these
        // degree-preserving relations, so closure inside the box is exact
        for i in 0..words.len() {
            for j in 0..words.len() {
                let same = find(&mut parent, i) == find(&mut parent, j);
                let got = words_congruent(&rels, &words[i], &words[j], &caps);
                assert_eq!(got, if same { Tri::Yes } else { Tri::No });
            }
        }
    }
}
