//! Process-wide parameter name table.
//!
//! Parameters are interned in first-appearance order. The table only
//! grows; a [`Param`] handle stays valid for the lifetime of the process.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

#[derive(Default)]
struct Table {
    names: Vec<Arc<str>>,
    index: HashMap<Arc<str>, u16>,
}

static TABLE: LazyLock<RwLock<Table>> = LazyLock::new(Default::default);

/// Handle to an interned free parameter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param(pub(crate) u16);

impl Param {
    /// Interns `name`, returning the existing handle when already known.
    pub fn intern(name: &str) -> Param {
        if let Some(p) = Param::lookup(name) {
            return p;
        }
        let mut t = TABLE.write().expect("parameter table poisoned");
        if let Some(&i) = t.index.get(name) {
            return Param(i);
        }
        let i = u16::try_from(t.names.len()).expect("parameter table overflow");
        let name: Arc<str> = Arc::from(name);
        t.names.push(name.clone());
        t.index.insert(name, i);
        Param(i)
    }

    pub fn lookup(name: &str) -> Option<Param> {
        let t = TABLE.read().expect("parameter table poisoned");
        t.index.get(name).map(|&i| Param(i))
    }

    pub fn name(self) -> Arc<str> {
        let t = TABLE.read().expect("parameter table poisoned");
        t.names[self.0 as usize].clone()
    }

    pub fn index(self) -> u16 {
        self.0
    }

    /// Name order with embedded digit runs compared numerically, so
    /// `alpha_1_2 < alpha_1_10`. Independent of interning order.
    pub fn cmp_by_name(self, other: Param) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        natural_cmp(&self.name(), &other.name())
    }

    /// LaTeX rendering: `alpha_1_2` becomes `\alpha_{1,2}`, `a4` becomes `a_{4}`.
    pub fn latex(self) -> String {
        latex_name(&self.name())
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut a, mut b) = (a.as_bytes(), b.as_bytes());
    loop {
        match (a.first(), b.first()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let la = a.iter().take_while(|c| c.is_ascii_digit()).count();
                let lb = b.iter().take_while(|c| c.is_ascii_digit()).count();
                let (da, db) = (&a[..la], &b[..lb]);
                let ta = trim_zeros(da);
                let tb = trim_zeros(db);
                let ord = ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb));
                if ord != Ordering::Equal {
                    return ord;
                }
                a = &a[la..];
                b = &b[lb..];
            }
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(y);
                }
                a = &a[1..];
                b = &b[1..];
            }
        }
    }
}

fn trim_zeros(d: &[u8]) -> &[u8] {
    let k = d.iter().take_while(|&&c| c == b'0').count();
    if k == d.len() {
        &d[d.len().saturating_sub(1)..]
    } else {
        &d[k..]
    }
}

const GREEK: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa",
    "lambda", "mu", "nu", "xi", "rho", "sigma", "tau", "phi", "chi", "psi", "omega",
];

fn latex_name(name: &str) -> String {
    let mut parts = name.split('_').filter(|s| !s.is_empty());
    let head = parts.next().unwrap_or("");
    let mut subs: Vec<&str> = parts.collect();
    let letters = head.trim_end_matches(|c: char| c.is_ascii_digit());
    let digits = &head[letters.len()..];
    if !digits.is_empty() {
        subs.insert(0, digits);
    }
    let base = if GREEK.contains(&letters) {
        format!("\\{letters}")
    } else if letters.chars().count() > 1 {
        format!("\\mathrm{{{letters}}}")
    } else {
        letters.to_string()
    };
    if subs.is_empty() {
        base
    } else {
        format!("{base}_{{{}}}", subs.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_idempotent() {
        let a = Param::intern("pt_alpha_9_9");
        let b = Param::intern("pt_alpha_9_9");
        assert_eq!(a, b);
        assert_eq!(&*a.name(), "pt_alpha_9_9");
        assert_eq!(Param::lookup("pt_alpha_9_9"), Some(a));
    }

    #[test]
    fn natural_order() {
        assert_eq!(natural_cmp("alpha_1_2", "alpha_1_10"), Ordering::Less);
        assert_eq!(natural_cmp("alpha_2_1", "beta_1_1"), Ordering::Less);
        assert_eq!(natural_cmp("a1", "a1_1"), Ordering::Less);
    }

    #[test]
    fn latex_tokens() {
        assert_eq!(latex_name("alpha_1_2"), "\\alpha_{1,2}");
        assert_eq!(latex_name("a_1_0_0"), "a_{1,0,0}");
        assert_eq!(latex_name("a4"), "a_{4}");
        assert_eq!(latex_name("t"), "t");
    }
}
