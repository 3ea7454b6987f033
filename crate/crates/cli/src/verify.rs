//! Worked examples checked by `verify paper-examples`.

use std::fmt;

use kotoric::ko_symbolic::{complexify, ko_equal, parse_ko};
use kotoric::simplicial_dj::{dj_equal, limit_tuple, tuple_mul};
use kotoric::toric::{bb_numbers, fixtures};
use kotoric::{KoElement, Result, SimplicialComplex, Truncation};

pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

fn check(name: &str, result: Result<(bool, String)>) -> Check {
    let (passed, detail) = result.unwrap_or_else(|e| (false, e.to_string()));
    Check { name: name.to_string(), passed, detail }
}

fn sym(i: &[u32], j: &[u32]) -> KoElement {
    KoElement::symbol(i, j, 0).expect("valid symbol")
}

/// The product relations among X_{1,2}, X_1, X_2 and their s = 1 variants.
fn bt2_products() -> Result<(bool, String)> {
    let t = Truncation::uniform(2, 6)?;
    let cases = [
        ("X_{1,2} X_{1,2}", "X_1 X_2 (X_{1,2} + X_1 + X_2 + 4)"),
        ("X_{1,2}^(0) X_{1,2}^(1)", "X_1 X_2 (X_{1,2}^(1) + X_1^(1) + X_2^(1))"),
        ("X_{1,2}^(1) X_{1,2}^(1)", "X_1 X_2 (gamma X_{1,2} + gamma X_1 + gamma X_2)"),
        ("X_1^(1) X_1^(1)", "gamma (X_1^2 + 4 X_1)"),
        ("X_2^(1) X_2^(1)", "gamma (X_2^2 + 4 X_2)"),
        ("X_1^(0) X_2^(1)", "2 X_{1,2}^(1) - X_2 X_1^(1)"),
        ("X_1^(1) X_2^(1)", "2 gamma X_{1,2} - X_2 gamma X_1"),
        ("X_1^(1) X_{1,2}^(1)", "gamma X_1 (2 X_2 + X_{1,2})"),
    ];
    let mut failed = Vec::new();
    for (l, r) in cases {
        if !ko_equal(&parse_ko(l, Some(2))?, &parse_ko(r, Some(2))?, Some(&t))? {
            failed.push(format!("{l} = {r}"));
        }
    }
    let detail = if failed.is_empty() {
        format!("{} relations", cases.len())
    } else {
        format!("failing: {}", failed.join("; "))
    };
    Ok((failed.is_empty(), detail))
}

/// 2[1,0] + Σ_{n=2}^{N} (−1)^{n−1}[n,0] vanishes in Z[x]/x^{N+1}.
fn infinite_relation() -> Result<(bool, String)> {
    let mut ok = true;
    for n in [4u32, 6, 8] {
        let mut sum = sym(&[1], &[0]).scale(2);
        for k in 2..=n {
            sum = sum.add(&sym(&[k], &[0]).scale(if k % 2 == 0 { -1 } else { 1 }))?;
        }
        ok &= !sum.is_zero() && complexify(&sum, &Truncation::uniform(1, n)?)?.is_zero();
    }
    Ok((ok, "N = 4, 6, 8".into()))
}

fn dj_examples() -> Result<(bool, String)> {
    let two = SimplicialComplex::new(2, &[vec![1], vec![2]])?;
    let l = SimplicialComplex::new(4, &[vec![1, 2], vec![2, 3, 4]])?;
    let (t2, t4) = (Truncation::uniform(2, 6)?, Truncation::uniform(4, 4)?);
    let vanishes = |a: &KoElement, b: &KoElement, k: &SimplicialComplex, t: &Truncation| -> Result<bool> {
        let zero = KoElement::zero(k.vertices(), 0);
        let limits = tuple_mul(&limit_tuple(a, k)?, &limit_tuple(b, k)?)?;
        Ok(dj_equal(&a.mul(b)?, &zero, k, t)? && limits.is_zero())
    };
    let mut ok = vanishes(&sym(&[2, 0], &[0, 0]), &sym(&[0, 3], &[0, 0]), &two, &t2)?;
    ok &= vanishes(&sym(&[1, 2, 0, 0], &[0; 4]), &sym(&[0, 1, 1, 0], &[0; 4]), &l, &t4)?;
    let (a, b) = (sym(&[1, 2, 0, 0], &[0; 4]), sym(&[2, 1, 0, 0], &[0; 4]));
    let rhs = sym(&[3, 3, 0, 0], &[0; 4]).add(&sym(&[2, 1, 0, 0], &[1, 2, 0, 0]))?;
    ok &= a.mul(&b)? == rhs && dj_equal(&a.mul(&b)?, &rhs, &l, &t4)?;
    Ok((ok, "two points and L: vanishing products, product identity".into()))
}

fn bb_examples() -> Result<(bool, String)> {
    let s = |n| bb_numbers(&fixtures::cp(n)).s;
    let single = |v: Vec<usize>| v.iter().filter(|&&x| x != 0).copied().collect::<Vec<_>>() == [1];
    let ok = s(2).iter().all(|&x| x == 0) && s(4).iter().all(|&x| x == 0) && single(s(3)) && single(s(5));
    let books = (1..=5).all(|n| bb_numbers(&fixtures::cp(n)).bookkeeping_holds())
        && bb_numbers(&fixtures::cp1_x_cp1()).bookkeeping_holds()
        && bb_numbers(&fixtures::hirzebruch(1)).bookkeeping_holds();
    Ok((ok && books, format!("CP2..CP5: s = {:?} {:?} {:?} {:?}", s(2), s(3), s(4), s(5))))
}

pub fn run_all() -> Vec<Check> {
    vec![
        check("BT^2 product relations", bt2_products()),
        check("infinite relation", infinite_relation()),
        check("DJ examples", dj_examples()),
        check("BB-numbers of projective spaces", bb_examples()),
    ]
}
