//! Built-in representations for `decompose`.
//!
//! Names are `<family><n>[:<functor>]`:
//! - `w<n>`: signed permutations of `W_n` on `Q^n`;
//! - `out<n>`: abelianization of `Out(F_n)` on `Q^n` (restricts to `w<n>` on `W_n`);
//! - `planted<n>`: `w<n>` plus a fake `rho_1_2 = I + E_13`, which mixes
//!   `E_{3}` into `E_{1}` and so must fail the diamond check;
//!
//! and the optional functor is `ext2`, `sym2` or `tensor2`.

use std::collections::BTreeMap;

use outfn_core::exactla::{rat, FiniteRep, GroupDescriptor, GroupWord, RationalMatrix};

use crate::{usage, CliResult};

/// Names making up the standard corpus for ranks `4..=6`.
pub fn corpus_names() -> Vec<String> {
    let mut out = Vec::new();
    for n in 4..=6 {
        out.push(format!("w{n}"));
        out.push(format!("w{n}:ext2"));
        out.push(format!("out{n}"));
    }
    out.push("w4:sym2".into());
    out.push("w4:tensor2".into());
    out.push("out4:ext2".into());
    out.push("out4:sym2".into());
    out
}

pub fn planted(n: usize) -> CliResult<FiniteRep> {
    if n < 3 {
        return Err(usage("planted representation needs n >= 3"));
    }
    let mut generators: Vec<String> = (1..=n).map(|i| format!("eps_{i}")).collect();
    generators.push("rho_1_2".into());
    let mut relations = Vec::new();
    for i in 0..n {
        relations.push(GroupWord::power(i, 2));
        for j in i + 1..n {
            relations.push(GroupWord::commutator(&GroupWord::single(i), &GroupWord::single(j)));
        }
    }
    let group = GroupDescriptor::custom(&format!("planted_{n}"), generators, relations);
    let mut named = BTreeMap::new();
    for i in 1..=n {
        let mut m = RationalMatrix::identity(n);
        m.set(i - 1, i - 1, rat(-1));
        named.insert(format!("eps_{i}"), m);
    }
    let mut rho = RationalMatrix::identity(n);
    rho.set(0, 2, rat(1));
    named.insert("rho_1_2".into(), rho);
    Ok(FiniteRep::from_named(group, n, &named)?)
}

pub fn builtin_rep(name: &str) -> CliResult<FiniteRep> {
    let bad = || usage(format!("unknown builtin representation {name:?}"));
    let (base, functor) = match name.split_once(':') {
        Some((b, f)) => (b, Some(f)),
        None => (name, None),
    };
    let split = base.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
    let (family, digits) = base.split_at(split);
    let n: usize = digits.parse().map_err(|_| bad())?;
    if !(2..=8).contains(&n) {
        return Err(usage(format!("builtin representations need 2 <= n <= 8, got {n}")));
    }
    let rep = match family.trim_end_matches('_').to_ascii_lowercase().as_str() {
        "w" => FiniteRep::signed_permutation(n)?,
        "out" => FiniteRep::abelianization(n)?,
        "planted" => planted(n)?,
        _ => return Err(bad()),
    };
    Ok(match functor {
        None => rep,
        Some("ext2") => rep.exterior_square()?,
        Some("sym2") => rep.symmetric_square()?,
        Some("tensor2") => rep.tensor(&rep)?,
        Some(_) => return Err(bad()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_parses() {
        assert_eq!(builtin_rep("w4").unwrap().dim(), 4);
        assert_eq!(builtin_rep("w5:ext2").unwrap().dim(), 10);
        assert_eq!(builtin_rep("out4:sym2").unwrap().dim(), 10);
        assert_eq!(builtin_rep("planted4").unwrap().dim(), 4);
        assert!(builtin_rep("v4").is_err());
        assert!(builtin_rep("w4:cube").is_err());
    }
}
