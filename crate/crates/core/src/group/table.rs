use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::{Group, GroupRepr};
use crate::algebra::{Field, Mat};
use crate::error::{Error, Result};

/// A small group stored as its full Cayley table. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct TableGroup {
    label: String,
    prime: u32,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<usize>,
}

/// Largest order accepted by [`TableGroup`].
const TABLE_LIMIT: usize = 4096;

impl TableGroup {
    /// Copies the multiplication of `g`, keeping its element numbering.
    pub fn from_group<R: GroupRepr>(g: &Group<R>, label: impl Into<String>) -> Result<Self> {
        let n = g.order();
        if n > TABLE_LIMIT {
            return Err(Error::budget("Cayley table", n as u128, TABLE_LIMIT));
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                table.push(g.mul(a, b));
            }
        }
        let mut t = Self::from_table(label, g.prime(), n, table, g.generators().iter().map(|&x| x as usize).collect())?;
        if g.identity() != 0 {
            t = t.relabel_identity(g.identity());
        }
        Ok(t)
    }

    /// A table with identity at 0; checked for identity and inverses.
    pub fn from_table(
        label: impl Into<String>,
        prime: u32,
        order: usize,
        table: Vec<u32>,
        generators: Vec<usize>,
    ) -> Result<Self> {
        if table.len() != order * order {
            return Err(Error::Shape("Cayley table has the wrong size".into()));
        }
        let mut inverse = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverse[a] = b as u32;
                }
            }
        }
        if inverse.contains(&u32::MAX) {
            return Err(Error::Shape("Cayley table lacks inverses".into()));
        }
        Ok(TableGroup {
            label: label.into(),
            prime,
            order,
            table,
            inverse,
            generators,
        })
    }

    fn relabel_identity(self, id: u32) -> Self {
        // Swap labels 0 and id.
        let n = self.order;
        let sw = |x: u32| {
            if x == 0 {
                id
            } else if x == id {
                0
            } else {
                x
            }
        };
        let mut table = vec![0u32; n * n];
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                table[sw(a) as usize * n + sw(b) as usize] = sw(self.table[a as usize * n + b as usize]);
            }
        }
        let generators = self.generators.iter().map(|&g| sw(g as u32) as usize).collect();
        Self::from_table(self.label, self.prime, n, table, generators).expect("relabeling keeps the axioms")
    }

    /// `C_{p^e}`, element `i` standing for `i` times the generator.
    pub fn cyclic(p: u32, e: u32) -> Result<Self> {
        if !crate::algebra::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = (p as usize).pow(e);
        if n > TABLE_LIMIT {
            return Err(Error::budget("Cayley table", n as u128, TABLE_LIMIT));
        }
        let table = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
        let generators = if n > 1 { vec![1] } else { Vec::new() };
        Self::from_table(format!("C{n}"), p, n, table, generators)
    }

    /// `G x H` with pairs numbered `a * |H| + b`.
    pub fn direct_product(g: &TableGroup, h: &TableGroup) -> Result<Self> {
        if g.prime != h.prime {
            return Err(Error::InvalidParams("factors have different primes".into()));
        }
        let (ng, nh) = (g.order, h.order);
        let n = ng * nh;
        if n > TABLE_LIMIT {
            return Err(Error::budget("Cayley table", n as u128, TABLE_LIMIT));
        }
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let a = g.table[(x / nh) * ng + y / nh] as usize;
                let b = h.table[(x % nh) * nh + y % nh] as usize;
                table.push((a * nh + b) as u32);
            }
        }
        let mut generators: Vec<usize> = g.generators.iter().map(|&a| a * nh).collect();
        generators.extend(h.generators.iter().copied());
        Self::from_table(format!("{} x {}", g.label, h.label), g.prime, n, table, generators)
    }
}

impl GroupRepr for TableGroup {
    type Elem = u32;

    fn order(&self) -> usize {
        self.order
    }

    fn prime(&self) -> u32 {
        self.prime
    }

    fn element(&self, index: usize) -> u32 {
        index as u32
    }

    fn index_of(&self, elem: &u32) -> Option<usize> {
        ((*elem as usize) < self.order).then_some(*elem as usize)
    }

    fn index_of_member(&self, elem: &u32) -> usize {
        *elem as usize
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.table[*a as usize * self.order + *b as usize]
    }

    fn inv(&self, a: &u32) -> u32 {
        self.inverse[*a as usize]
    }

    fn identity(&self) -> u32 {
        0
    }

    fn generators(&self) -> Vec<usize> {
        self.generators.clone()
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// A matrix group given by an explicit element list and a hash index.
pub struct MatrixGroup {
    field: Arc<Field>,
    label: String,
    elements: Vec<Mat>,
    index: HashMap<Mat, u32>,
    generators: Vec<usize>,
}

impl std::fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatrixGroup")
            .field("label", &self.label)
            .field("order", &self.elements.len())
            .finish()
    }
}

impl MatrixGroup {
    /// Closes `gens` under multiplication and sorts the result canonically.
    pub fn generate(field: Arc<Field>, gens: &[Mat], budget: usize, label: impl Into<String>) -> Result<Self> {
        let dim = gens.first().map_or(1, |g| g.dim());
        if gens.iter().any(|g| g.dim() != dim) {
            return Err(Error::Shape("generators have different sizes".into()));
        }
        let mut seen: std::collections::HashSet<Mat> = std::collections::HashSet::new();
        let id = Mat::identity(dim);
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.mul(g, &field);
                if !seen.contains(&y) {
                    if seen.len() >= budget {
                        return Err(Error::budget("matrix group closure", seen.len() as u128 + 1, budget));
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Mat> = seen.into_iter().collect();
        elements.sort();
        let mut g = Self::from_elements(field, elements, label)?;
        g.generators = gens.iter().map(|m| g.index[m] as usize).collect();
        Ok(g)
    }

    /// Wraps an explicit element list, keeping its order. The list must contain
    /// the identity; closure is not checked here.
    pub fn from_elements(field: Arc<Field>, elements: Vec<Mat>, label: impl Into<String>) -> Result<Self> {
        let p = field.p() as usize;
        let mut n = elements.len();
        while n > 1 && n % p == 0 {
            n /= p;
        }
        if n != 1 {
            return Err(Error::InvalidParams(format!(
                "{} elements is not a power of {p}",
                elements.len()
            )));
        }
        let index: HashMap<Mat, u32> = elements.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        if index.len() != elements.len() {
            return Err(Error::Shape("duplicate elements".into()));
        }
        let dim = elements[0].dim();
        if !index.contains_key(&Mat::identity(dim)) {
            return Err(Error::Shape("element list lacks the identity".into()));
        }
        let mut g = MatrixGroup {
            field,
            label: label.into(),
            elements,
            index,
            generators: Vec::new(),
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut covered: std::collections::HashSet<Mat> = std::collections::HashSet::new();
        covered.insert(Mat::identity(self.elements[0].dim()));
        let mut gens: Vec<usize> = Vec::new();
        for (i, e) in self.elements.iter().enumerate() {
            if covered.len() == self.elements.len() {
                break;
            }
            if covered.contains(e) {
                continue;
            }
            gens.push(i);
            let mut frontier: Vec<Mat> = covered.iter().map(|x| x.mul(e, &self.field)).collect();
            while let Some(x) = frontier.pop() {
                if covered.insert(x.clone()) {
                    for &g in &gens {
                        frontier.push(x.mul(&self.elements[g], &self.field));
                    }
                }
            }
        }
        gens
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    /// Checks closure under multiplication by every generator, which together
    /// with generation makes the element list a group.
    pub fn verify_closure(&self) -> bool {
        self.elements.iter().all(|x| {
            self.generators
                .iter()
                .all(|&g| self.index.contains_key(&x.mul(&self.elements[g], &self.field)))
        })
    }
}

impl GroupRepr for MatrixGroup {
    type Elem = Mat;

    fn order(&self) -> usize {
        self.elements.len()
    }

    fn prime(&self) -> u32 {
        self.field.p()
    }

    fn element(&self, index: usize) -> Mat {
        self.elements[index].clone()
    }

    fn index_of(&self, elem: &Mat) -> Option<usize> {
        self.index.get(elem).map(|&i| i as usize)
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        a.mul(b, &self.field)
    }

    fn inv(&self, a: &Mat) -> Mat {
        a.inverse(&self.field).expect("group elements are invertible")
    }

    fn identity(&self) -> Mat {
        Mat::identity(self.elements[0].dim())
    }

    fn generators(&self) -> Vec<usize> {
        self.generators.clone()
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}
