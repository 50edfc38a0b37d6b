use std::collections::BTreeMap;
use std::fmt;

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::exactalg::{irreducibles, Gf, Mat, UniPoly};

/// One index of a pretype: its degree and one partition per component.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Column {
    pub degree: u32,
    pub parts: Vec<Partition>,
}

impl Column {
    pub fn new(degree: u32, parts: Vec<Partition>) -> Self {
        Column { degree, parts }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(|p| p.is_empty())
    }
}

/// A pretype with an explicit (ordered) index set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PreType {
    dims: Vec<u32>,
    columns: Vec<Column>,
}

impl PreType {
    /// Checks that every column has one partition per component, that the
    /// degrees add up to the component dimensions and that no column is
    /// empty in every component.
    pub fn new(dims: Vec<u32>, columns: Vec<Column>) -> Result<Self> {
        let r = dims.len();
        for c in &columns {
            if c.parts.len() != r {
                return Err(Error::domain("column has the wrong number of components"));
            }
            if c.degree == 0 {
                return Err(Error::domain("degrees must be positive"));
            }
            if c.is_empty() {
                return Err(Error::domain("every index must occur in some component"));
            }
        }
        for (i, &n) in dims.iter().enumerate() {
            let total: u32 = columns.iter().map(|c| c.degree * c.parts[i].weight()).sum();
            if total != n {
                return Err(Error::domain(format!(
                    "component {i} has dimension {n} but the columns account for {total}"
                )));
            }
        }
        Ok(PreType { dims, columns })
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn key(&self) -> TypeKey {
        TypeKey::from_columns(self.dims.clone(), self.columns.clone())
    }

    pub fn aut_order(&self) -> u64 {
        self.key().aut_order()
    }
}

/// Canonical form of a type: the columns sorted by degree and then by the
/// partition sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeKey {
    dims: Vec<u32>,
    columns: Vec<Column>,
}

impl TypeKey {
    pub(crate) fn from_columns(dims: Vec<u32>, mut columns: Vec<Column>) -> Self {
        columns.sort();
        TypeKey { dims, columns }
    }

    /// Validating constructor.
    pub fn new(dims: Vec<u32>, columns: Vec<Column>) -> Result<Self> {
        Ok(PreType::new(dims, columns)?.key())
    }

    /// Single-component type from `(degree, partition)` pairs.
    pub fn single(n: u32, cols: &[(u32, Partition)]) -> Result<Self> {
        let columns = cols.iter().map(|(d, p)| Column::new(*d, vec![p.clone()])).collect();
        TypeKey::new(vec![n], columns)
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn components(&self) -> usize {
        self.dims.len()
    }

    /// Product of factorials of the multiplicities of identical columns.
    pub fn aut_order(&self) -> u64 {
        let mut out = 1u64;
        let mut run = 0u64;
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 && *c == self.columns[i - 1] {
                run += 1;
            } else {
                run = 1;
            }
            out *= run;
        }
        out
    }

    /// Keeps the listed components (in the given order) and drops indices
    /// that become empty.
    pub fn select(&self, comps: &[usize]) -> TypeKey {
        let dims = comps.iter().map(|&i| self.dims[i]).collect();
        let columns = self
            .columns
            .iter()
            .map(|c| Column::new(c.degree, comps.iter().map(|&i| c.parts[i].clone()).collect()))
            .filter(|c| !c.is_empty())
            .collect();
        TypeKey::from_columns(dims, columns)
    }

    /// Projection on the first `l` components.
    pub fn project(&self, l: usize) -> Result<TypeKey> {
        if l == 0 || l > self.components() {
            return Err(Error::domain(format!(
                "projection length {l} outside 1..={}",
                self.components()
            )));
        }
        Ok(self.select(&(0..l).collect::<Vec<_>>()))
    }

    /// Number of columns of each degree, indexed by degree.
    pub fn degree_profile(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for c in &self.columns {
            *m.entry(c.degree).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for TypeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.columns.is_empty() {
            return write!(f, "[]");
        }
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|c| {
                let ps: Vec<String> = c.parts.iter().map(|p| p.to_string()).collect();
                format!("d{}:{}", c.degree, ps.join("|"))
            })
            .collect();
        write!(f, "[{}]", cols.join(" + "))
    }
}

impl fmt::Debug for TypeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.dims, self)
    }
}

/// A conjugacy class of a tuple: for every irreducible polynomial that
/// occurs, its Jordan partition in each component.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ClassKey {
    pub dims: Vec<u32>,
    pub entries: Vec<(UniPoly, Vec<Partition>)>,
}

impl ClassKey {
    pub fn type_key(&self) -> TypeKey {
        let columns = self
            .entries
            .iter()
            .map(|(f, ps)| Column::new(f.degree().unwrap() as u32, ps.clone()))
            .collect();
        TypeKey::from_columns(self.dims.clone(), columns)
    }

    /// Block-diagonal representative of component `i`: one companion block
    /// of `f^k` for each part `k` at `f`.
    pub fn representative(&self, i: usize, f: &Gf) -> Mat {
        let mut blocks = Vec::new();
        for (g, ps) in &self.entries {
            for &k in ps[i].parts() {
                blocks.push(Mat::companion(&g.pow(k, f), f));
            }
        }
        Mat::block_diag(&blocks)
    }

    pub fn representatives(&self, f: &Gf) -> Vec<Mat> {
        (0..self.dims.len()).map(|i| self.representative(i, f)).collect()
    }

    pub fn polys(&self) -> impl Iterator<Item = &UniPoly> {
        self.entries.iter().map(|(g, _)| g)
    }
}

/// Monic irreducible factors with multiplicities, by trial division against
/// the irreducibles of each degree up to half the remaining degree.
pub fn factor(g: &UniPoly, f: &Gf) -> Result<Vec<(UniPoly, u32)>> {
    let mut rem = g.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while 2 * d <= rem.degree().unwrap_or(0) as u32 {
        for h in irreducibles(f, d)?.iter() {
            let mut mult = 0;
            loop {
                let (quot, r) = rem.div_rem(h, f).unwrap();
                if !r.is_zero() {
                    break;
                }
                rem = quot;
                mult += 1;
            }
            if mult > 0 {
                out.push((h.clone(), mult));
            }
        }
        d += 1;
    }
    if rem.degree().unwrap_or(0) > 0 {
        out.push((rem, 1));
    }
    out.sort();
    Ok(out)
}

/// Jordan data of an invertible matrix: each irreducible factor of the
/// characteristic polynomial with the partition read off from kernel
/// dimension jumps of `f(g)^k`.
pub fn jordan_data(g: &Mat, f: &Gf) -> Result<Vec<(UniPoly, Partition)>> {
    if !g.is_square() || g.det(f) == 0 {
        return Err(Error::domain("type of a non-invertible matrix"));
    }
    let mut out = Vec::new();
    for (h, e) in factor(&g.charpoly(f), f)? {
        let deg = h.degree().unwrap();
        let m = g.eval_poly(&h, f);
        let target = e as usize * deg;
        let mut power = m.clone();
        let mut prev = 0usize;
        let mut at_least = Vec::new();
        loop {
            let k = power.kernel_dim(f);
            at_least.push(((k - prev) / deg) as u32);
            prev = k;
            if k == target {
                break;
            }
            power = power.mul(&m, f);
        }
        out.push((h, Partition::new(at_least).unwrap().conjugate()));
    }
    Ok(out)
}

/// Conjugacy class of a tuple `(g_1, .., g_r)` over a shared index set.
pub fn class_of_tuple(gs: &[Mat], f: &Gf) -> Result<ClassKey> {
    let r = gs.len();
    let mut map: BTreeMap<UniPoly, Vec<Partition>> = BTreeMap::new();
    for (i, g) in gs.iter().enumerate() {
        for (h, p) in jordan_data(g, f)? {
            map.entry(h).or_insert_with(|| vec![Partition::empty(); r])[i] = p;
        }
    }
    Ok(ClassKey {
        dims: gs.iter().map(|g| g.rows() as u32).collect(),
        entries: map.into_iter().collect(),
    })
}

/// Type of a tuple of invertible matrices over the same field.
pub fn type_of_tuple(gs: &[Mat], f: &Gf) -> Result<TypeKey> {
    Ok(class_of_tuple(gs, f)?.type_key())
}
