//! Small named groups used as a test corpus, all of order at most 625.

use std::sync::Arc;

use crate::algebra::{Field, Mat};
use crate::error::Result;
use crate::group::{Group, MatrixGroup, TableGroup, DEFAULT_BUDGET};
use crate::unitary::sylow;
use crate::wreath::{build_wreath, WreathSpec};

/// Lower unitriangular `3 x 3` matrices over `F_p`, generated by the two
/// elementary root matrices just below the diagonal.
pub fn unitriangular3(p: u32) -> Result<Group<MatrixGroup>> {
    let field = Arc::new(Field::new(p, 1)?);
    let mut a = Mat::identity(3);
    a.set(1, 0, field.from_int(1));
    let mut b = Mat::identity(3);
    b.set(2, 1, field.from_int(1));
    let g = MatrixGroup::generate(field, &[a, b], DEFAULT_BUDGET, format!("UT3(F{p})"))?;
    Group::new(g, DEFAULT_BUDGET)
}

fn table<R: crate::group::GroupRepr>(g: &Group<R>, label: &str) -> Result<Group<TableGroup>> {
    Group::new(TableGroup::from_group(g, label)?, DEFAULT_BUDGET)
}

fn cyclic(p: u32, e: u32) -> Result<TableGroup> {
    TableGroup::cyclic(p, e)
}

/// Every corpus group, as Cayley tables.
pub fn corpus() -> Result<Vec<Group<TableGroup>>> {
    let mut out = Vec::new();
    let push = |out: &mut Vec<Group<TableGroup>>, t: TableGroup| -> Result<()> {
        out.push(Group::new(t, DEFAULT_BUDGET)?);
        Ok(())
    };
    push(&mut out, cyclic(5, 1)?)?;
    push(&mut out, cyclic(5, 2)?)?;
    push(&mut out, cyclic(5, 3)?)?;
    push(&mut out, TableGroup::direct_product(&cyclic(5, 1)?, &cyclic(5, 1)?)?)?;
    push(&mut out, TableGroup::direct_product(&cyclic(5, 1)?, &cyclic(5, 2)?)?)?;
    let c5sq = TableGroup::direct_product(&cyclic(5, 1)?, &cyclic(5, 1)?)?;
    push(&mut out, TableGroup::direct_product(&c5sq, &c5sq)?)?;
    let ut5 = table(&unitriangular3(5)?, "UT3(F5)")?;
    push(&mut out, TableGroup::direct_product(ut5.repr(), &cyclic(5, 1)?)?)?;
    out.push(ut5);
    out.push(table(&sylow(5, 5, 2)?, "S(5,5,2)")?);
    out.push(table(&sylow(5, 5, 3)?, "S(5,5,3)")?);
    out.push(table(&sylow(5, 25, 2)?, "S(5,25,2)")?);
    let ut3 = table(&unitriangular3(3)?, "UT3(F3)")?;
    push(&mut out, TableGroup::direct_product(&cyclic(3, 1)?, ut3.repr())?)?;
    out.push(ut3);
    let w = build_wreath(WreathSpec::any_prime(3, 1, 1)?, DEFAULT_BUDGET)?;
    out.push(table(&w, "C3 wr C3")?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_orders() {
        let orders: Vec<(String, usize)> = corpus()
            .unwrap()
            .iter()
            .map(|g| (g.label(), g.order()))
            .collect();
        let expect = [
            ("C5", 5),
            ("C25", 25),
            ("C125", 125),
            ("C5 x C5", 25),
            ("C5 x C25", 125),
            ("C5 x C5 x C5 x C5", 625),
            ("UT3(F5) x C5", 625),
            ("UT3(F5)", 125),
            ("S(5,5,2)", 5),
            ("S(5,5,3)", 125),
            ("S(5,25,2)", 25),
            ("C3 x UT3(F3)", 81),
            ("UT3(F3)", 27),
            ("C3 wr C3", 81),
        ];
        let expect: Vec<(String, usize)> = expect.iter().map(|&(l, n)| (l.to_string(), n)).collect();
        assert_eq!(orders, expect);
    }

    #[test]
    fn tables_are_associative() {
        for g in corpus().unwrap() {
            let n = g.order() as u32;
            let step = (n / 23).max(1);
            for a in (0..n).step_by(step as usize) {
                for b in (0..n).step_by(step as usize) {
                    for c in (0..n).step_by(step as usize) {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)), "{}", g.label());
                    }
                }
            }
        }
    }
}
