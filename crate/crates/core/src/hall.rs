//! Hall basis of a free nilpotent Lie algebra.
//!
//! Convention: `[u, v]` is a basis element iff `u < v` and either `v` is a generator or
//! `v = [a, b]` with `a <= u`. Elements are ordered by degree, then by `(u, v)`.

use crate::error::{Error, Result};
use crate::scalar::{one, Scalar};
use num::Zero;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    pub degree: usize,
    /// `None` for generators.
    pub children: Option<(usize, usize)>,
    pub index: usize,
}

pub struct HallBasis {
    pub generators: usize,
    pub class: usize,
    pub elements: Vec<HallElement>,
    lookup: HashMap<(usize, usize), usize>,
}

type Combo = BTreeMap<usize, Scalar>;

fn add_into(acc: &mut Combo, c: &Scalar, x: &Combo) {
    for (k, v) in x {
        let e = acc.entry(*k).or_insert_with(Scalar::zero);
        *e += c * v;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

impl HallBasis {
    pub fn new(generators: usize, class: usize, cap: usize) -> Result<Self> {
        let mut elements: Vec<HallElement> = (0..generators)
            .map(|i| HallElement { degree: 1, children: None, index: i })
            .collect();
        if class == 0 {
            elements.clear();
        }
        let mut lookup = HashMap::new();
        for d in 2..=class {
            let mut new = Vec::new();
            for u in 0..elements.len() {
                for v in u + 1..elements.len() {
                    if elements[u].degree + elements[v].degree != d {
                        continue;
                    }
                    let ok = match elements[v].children {
                        None => true,
                        Some((a, _)) => a <= u,
                    };
                    if ok {
                        new.push((u, v));
                    }
                }
            }
            for (u, v) in new {
                let index = elements.len();
                if index >= cap {
                    return Err(Error::CapExceeded(format!("free nilpotent dimension exceeds {cap}")));
                }
                elements.push(HallElement { degree: d, children: Some((u, v)), index });
                lookup.insert((u, v), index);
            }
        }
        Ok(HallBasis { generators, class, elements, lookup })
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn name(&self, i: usize, gen_names: &[String]) -> String {
        match self.elements[i].children {
            None => gen_names[i].clone(),
            Some((u, v)) => format!("[{},{}]", self.name(u, gen_names), self.name(v, gen_names)),
        }
    }

    /// `[x, y]` of two basis elements expanded in the basis (truncated above the class).
    pub fn bracket(&self, x: usize, y: usize, memo: &mut HashMap<(usize, usize), Combo>) -> Combo {
        if x == y || self.elements[x].degree + self.elements[y].degree > self.class {
            return Combo::new();
        }
        if x > y {
            let mut r = self.bracket(y, x, memo);
            for v in r.values_mut() {
                *v = -v.clone();
            }
            return r;
        }
        if let Some(r) = memo.get(&(x, y)) {
            return r.clone();
        }
        let result = if let Some(&k) = self.lookup.get(&(x, y)) {
            Combo::from([(k, one())])
        } else {
            // y = [a, b] with x < a: [x,[a,b]] = [a,[x,b]] - [b,[x,a]].
            let (a, b) = self.elements[y].children.expect("generator pairs are always basis elements");
            let mut acc = Combo::new();
            let xb = self.bracket(x, b, memo);
            for (k, c) in &xb {
                let t = self.bracket(a, *k, memo);
                add_into(&mut acc, c, &t);
            }
            let xa = self.bracket(x, a, memo);
            for (k, c) in &xa {
                let t = self.bracket(b, *k, memo);
                add_into(&mut acc, &-c.clone(), &t);
            }
            acc
        };
        memo.insert((x, y), result.clone());
        result
    }
}

/// Dimension of the degree-`d` part of the free Lie algebra on `m` generators.
pub fn witt_dimension(m: usize, d: usize) -> usize {
    fn mobius(n: usize) -> i64 {
        let mut n = n;
        let mut r = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                r = -r;
            }
            p += 1;
        }
        if n > 1 {
            r = -r;
        }
        r
    }
    let mut s: i64 = 0;
    for e in 1..=d {
        if d % e == 0 {
            s += mobius(e) * (m as i64).pow((d / e) as u32);
        }
    }
    (s / d as i64) as usize
}
