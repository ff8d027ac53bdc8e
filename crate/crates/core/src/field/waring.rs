use std::collections::VecDeque;

use super::{Field, FieldElement};
use crate::error::{Error, Result};

/// The k-th power structure of a finite field: which elements are k-th
/// powers, the least `w` with every element a sum of `w` k-th powers, and a
/// shortest representation of every representable element.
#[derive(Debug, Clone)]
pub struct WaringProfile {
    field: Field,
    k: u32,
    powers: Vec<FieldElement>,
    w: Option<u32>,
    reps: Vec<Option<Vec<FieldElement>>>,
}

impl WaringProfile {
    /// Breadth-first closure over sums of nonzero k-th powers. Ties between
    /// representations of equal length go to the lexicographically least list
    /// in canonical element order.
    pub fn compute(field: &Field, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument(
                "exponent k must be at least 2".into(),
            ));
        }
        let q = field.order() as usize;
        let kth: Vec<FieldElement> = field.elements().map(|e| field.pow(e, k as u64)).collect();
        let mut powers = kth.clone();
        powers.sort();
        powers.dedup();
        let nonzero: Vec<FieldElement> = powers.iter().copied().filter(|e| !e.is_zero()).collect();

        // dist[v] = least number of nonzero k-th powers summing to v.
        let mut dist = vec![u32::MAX; q];
        dist[0] = 0;
        let mut queue = VecDeque::from([FieldElement::ZERO]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v.index() as usize];
            for &pw in &nonzero {
                let u = field.add(v, pw);
                if dist[u.index() as usize] == u32::MAX {
                    dist[u.index() as usize] = dv + 1;
                    queue.push_back(u);
                }
            }
        }

        let mut reps = vec![None; q];
        for v in field.elements() {
            if v.is_zero() {
                reps[0] = Some(vec![FieldElement::ZERO]);
                continue;
            }
            if dist[v.index() as usize] == u32::MAX {
                continue;
            }
            let mut rep = Vec::new();
            let mut rest = v;
            while !rest.is_zero() {
                let need = dist[rest.index() as usize] - 1;
                let e = field
                    .elements()
                    .skip(1)
                    .find(|&e| {
                        let r = field.sub(rest, kth[e.index() as usize]);
                        dist[r.index() as usize] == need
                    })
                    .expect("BFS distances are consistent");
                rep.push(e);
                rest = field.sub(rest, kth[e.index() as usize]);
            }
            reps[v.index() as usize] = Some(rep);
        }

        let w = if reps.iter().all(Option::is_some) {
            reps.iter().map(|r| r.as_ref().unwrap().len() as u32).max()
        } else {
            None
        };
        Ok(WaringProfile {
            field: field.clone(),
            k,
            powers,
            w,
            reps,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The distinct k-th powers, in canonical order.
    pub fn powers(&self) -> &[FieldElement] {
        &self.powers
    }

    /// `w_F(k)`, absent when F is not a k-Waring field.
    pub fn w(&self) -> Option<u32> {
        self.w
    }

    pub fn is_waring(&self) -> bool {
        self.w.is_some()
    }

    pub fn rep(&self, e: FieldElement) -> Option<&[FieldElement]> {
        self.reps.get(e.index() as usize).and_then(|r| r.as_deref())
    }

    pub fn neg_one_terms(&self) -> Option<&[FieldElement]> {
        self.rep(self.field.neg(FieldElement::ONE))
    }

    /// `w`, or an error naming the field when it is not k-Waring.
    pub fn require_w(&self) -> Result<u32> {
        self.w.ok_or(Error::NotWaringField {
            q: self.field.order(),
            k: self.k,
        })
    }
}

/// Minimal-length list `[e_1, .., e_s]` with `sum e_j^k = elem`. Zero is
/// represented as `[0]`.
pub fn represent(elem: FieldElement, profile: &WaringProfile) -> Result<Vec<FieldElement>> {
    profile
        .rep(elem)
        .map(<[_]>::to_vec)
        .ok_or_else(|| Error::NotRepresentable(profile.field.format_element(elem)))
}

/// True iff GF(p^m) is a k-Waring field: for every proper divisor d of m,
/// `(p^m - 1)/(p^d - 1)` does not divide k.
pub fn waring_field_criterion(p: u32, m: u32, k: u32) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if k % p == 0 {
        return Err(Error::CharacteristicDividesK { p, k });
    }
    let q = (p as u64).pow(m);
    Ok((1..m)
        .filter(|d| m % d == 0)
        .all(|d| k as u64 % ((q - 1) / ((p as u64).pow(d) - 1)) != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn idx(v: &[FieldElement]) -> Vec<u32> {
        v.iter().map(|e| e.index()).collect()
    }

    #[test]
    fn cubes_mod_five() {
        let f = make_field(5, 1, None).unwrap();
        let prof = WaringProfile::compute(&f, 3).unwrap();
        assert_eq!(idx(prof.powers()), vec![0, 1, 2, 3, 4]);
        assert_eq!(prof.w(), Some(1));
    }

    #[test]
    fn cubes_mod_seven() {
        let f = make_field(7, 1, None).unwrap();
        let prof = WaringProfile::compute(&f, 3).unwrap();
        assert_eq!(idx(prof.powers()), vec![0, 1, 6]);
        assert_eq!(prof.w(), Some(3));
        assert_eq!(
            idx(&represent(f.from_int(3), &prof).unwrap()),
            vec![1, 1, 1]
        );
        assert_eq!(idx(&represent(FieldElement::ZERO, &prof).unwrap()), vec![0]);
    }

    #[test]
    fn gf4_cubes_are_not_waring() {
        let f = make_field(2, 2, Some(vec![1, 1, 1])).unwrap();
        let prof = WaringProfile::compute(&f, 3).unwrap();
        assert_eq!(idx(prof.powers()), vec![0, 1]);
        assert_eq!(prof.w(), None);
        assert!(matches!(
            represent(FieldElement(2), &prof),
            Err(Error::NotRepresentable(_))
        ));
        assert!(prof.require_w().is_err());
    }

    #[test]
    fn criterion_examples() {
        assert!(!waring_field_criterion(2, 2, 3).unwrap());
        assert!(!waring_field_criterion(3, 2, 4).unwrap());
        for p in [2, 3, 5, 7, 11] {
            for k in 1..20 {
                if k % p != 0 {
                    assert!(waring_field_criterion(p, 1, k).unwrap());
                }
            }
        }
        assert!(matches!(
            waring_field_criterion(3, 1, 6),
            Err(Error::CharacteristicDividesK { .. })
        ));
    }

    #[test]
    fn fourth_powers_of_gf9_stay_in_prime_subfield() {
        let f = make_field(3, 2, None).unwrap();
        let prof = WaringProfile::compute(&f, 4).unwrap();
        assert_eq!(idx(prof.powers()), vec![0, 1, 2]);
        assert!(!prof.is_waring());
    }

    #[test]
    fn reps_sum_correctly_and_are_lex_least() {
        for (p, m) in [(7, 1), (11, 1), (13, 1), (2, 3), (3, 2), (5, 2)] {
            let f = make_field(p, m, None).unwrap();
            for k in 2..7 {
                let prof = WaringProfile::compute(&f, k).unwrap();
                for e in f.elements() {
                    let Some(rep) = prof.rep(e) else { continue };
                    let sum = rep
                        .iter()
                        .fold(FieldElement::ZERO, |acc, &a| f.add(acc, f.pow(a, k as u64)));
                    assert_eq!(sum, e);
                    if let Some(w) = prof.w() {
                        assert!(rep.len() as u32 <= w);
                    }
                }
                if let Some(w) = prof.w() {
                    let longest = f
                        .elements()
                        .map(|e| prof.rep(e).unwrap().len() as u32)
                        .max()
                        .unwrap();
                    assert_eq!(w, longest);
                }
            }
        }
    }

    #[test]
    fn reps_are_minimal_by_brute_force() {
        // Exhaustive search over all lists up to length 3 in F_13.
        let f = make_field(13, 1, None).unwrap();
        for k in 2..7u32 {
            let prof = WaringProfile::compute(&f, k).unwrap();
            for e in f.elements().skip(1) {
                let mut best: Option<Vec<u32>> = None;
                'len: for len in 1..=3u32 {
                    let total = 13u32.pow(len);
                    for code in 0..total {
                        let list: Vec<u32> = (0..len)
                            .map(|i| (code / 13u32.pow(len - 1 - i)) % 13)
                            .collect();
                        let sum = list.iter().fold(FieldElement::ZERO, |acc, &a| {
                            f.add(acc, f.pow(FieldElement(a), k as u64))
                        });
                        if sum == e {
                            best = Some(list);
                            break 'len;
                        }
                    }
                }
                match (best, prof.rep(e)) {
                    (Some(b), Some(r)) => assert_eq!(b, idx(r), "k={} e={}", k, e.index()),
                    (None, Some(r)) => assert!(r.len() > 3),
                    (_, None) => panic!("prime fields are Waring"),
                }
            }
        }
    }
}
