use std::cmp::Ordering;

/// Exponent vector, dense, one entry per ring variable.
pub type Monomial = Vec<u32>;

pub fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `b / a`, assuming `a | b`.
pub fn quo(b: &[u32], a: &[u32]) -> Monomial {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

pub fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

fn degrevlex_on<'a>(
    a: impl DoubleEndedIterator<Item = &'a u32> + Clone,
    b: impl DoubleEndedIterator<Item = &'a u32> + Clone,
) -> Ordering {
    let da: u32 = a.clone().sum();
    let db: u32 = b.clone().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.rev().zip(b.rev()) {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Monomial orders on exponent vectors. Variables are ranked by their
/// position in the ring: index 0 is the largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Block order: degrevlex on the variables in `front`, ties broken by
    /// degrevlex on the remaining ones. Any monomial involving a front
    /// variable is larger than every monomial free of them.
    Elimination {
        front: Vec<usize>,
    },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::DegRevLex => degrevlex_on(a.iter(), b.iter()),
            MonomialOrder::Elimination { front } => {
                let fa: Vec<u32> = front.iter().map(|&i| a[i]).collect();
                let fb: Vec<u32> = front.iter().map(|&i| b[i]).collect();
                degrevlex_on(fa.iter(), fb.iter()).then_with(|| {
                    let ra: Vec<u32> = (0..a.len()).filter(|i| !front.contains(i)).map(|i| a[i]).collect();
                    let rb: Vec<u32> = (0..b.len()).filter(|i| !front.contains(i)).map(|i| b[i]).collect();
                    degrevlex_on(ra.iter(), rb.iter())
                })
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lp",
            MonomialOrder::DegRevLex => "dp",
            MonomialOrder::Elimination { .. } => "elim",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::DegRevLex;
        // x^2 > xy > y^2 in (x, y)
        assert_eq!(o.cmp(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 1], &[0, 2]), Ordering::Greater);
        // x*z^1 vs y^2 in (x,y,z): xz has z-exponent 1, y^2 has 0 -> y^2 bigger
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[0, 0, 3], &[1, 0, 0]), Ordering::Greater);
    }

    #[test]
    fn elimination_puts_front_first() {
        let o = MonomialOrder::Elimination { front: vec![0] };
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 9, 9]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2, 0], &[0, 1, 0]), Ordering::Greater);
    }

    #[test]
    fn monomial_helpers() {
        assert!(divides(&[1, 0], &[2, 3]));
        assert!(!divides(&[1, 4], &[2, 3]));
        assert_eq!(lcm(&[1, 4], &[2, 3]), vec![2, 4]);
        assert!(coprime(&[1, 0], &[0, 3]));
    }
}
