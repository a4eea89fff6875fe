//! Finite groups stored as validated Cayley tables.
//!
//! Elements are the indices `0..n` with the identity at index 0. Internally
//! everything is 0-based; anything shown to a user is 1-based (`g1 = 1`).
//!
//! Catalog orderings:
//! - `C<n>`: index `k` is `g^k`.
//! - `D<m>`: rotations `r^0 .. r^(m-1)`, then reflections `s r^0 .. s r^(m-1)`.
//! - `S<m>`: permutations of `0..m` in lexicographic order of their one-line
//!   form; the product `a*b` is the composition `i -> a(b(i))`.
//! - `Q8`: `1, -1, i, -i, j, -j, k, -k`.
//! - `GxH`: pairs `(g, h)` in lexicographic order, index `g * |H| + h`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};

/// Largest supported group order.
pub const MAX_ORDER: usize = 128;

/// Largest order for which associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;

/// Why a Cayley table was rejected. Indices are 0-based; the `Display`
/// output is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group must have at least one element")]
    Empty,
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(usize),
    #[error("table has {rows} rows of lengths {lengths:?}; expected {n}x{n}")]
    Shape {
        n: usize,
        rows: usize,
        lengths: Vec<usize>,
    },
    #[error("entry at row {}, column {} is {value}; entries are 0-based indices below {n}", .row + 1, .col + 1)]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("{}", identity_message(.identity))]
    IdentityNotFirst { identity: Option<usize> },
    #[error("row {} repeats g{} (not a Latin square)", .row + 1, .value + 1)]
    RowNotPermutation { row: usize, value: usize },
    #[error("column {} repeats g{} (not a Latin square)", .col + 1, .value + 1)]
    ColumnNotPermutation { col: usize, value: usize },
    #[error(
        "associativity fails for (g{}, g{}, g{})", .a + 1, .b + 1, .c + 1
    )]
    NotAssociative { a: usize, b: usize, c: usize },
}

fn identity_message(identity: &Option<usize>) -> String {
    match identity {
        Some(e) => format!(
            "the identity is g{}, but it must come first; reorder the elements so it is g1",
            e + 1
        ),
        None => "no two-sided identity element; g1 must be the identity".to_string(),
    }
}

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    label: String,
}

impl FiniteGroup {
    /// Validates `table` (`table[i][j]` = index of `g_i g_j`) and builds the group.
    pub fn from_table(n: usize, table: Vec<Vec<usize>>, label: impl Into<String>) -> Result<Self> {
        if n == 0 {
            return Err(GroupError::Empty.into());
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n).into());
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(GroupError::Shape {
                n,
                rows: table.len(),
                lengths: table.iter().map(Vec::len).collect(),
            }
            .into());
        }
        for (row, r) in table.iter().enumerate() {
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::EntryOutOfRange { row, col, value, n }.into());
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let at = |i: usize, j: usize| flat[i * n + j];

        let is_identity = |e: usize| (0..n).all(|j| at(e, j) == j && at(j, e) == j);
        if !is_identity(0) {
            return Err(GroupError::IdentityNotFirst {
                identity: (1..n).find(|&e| is_identity(e)),
            }
            .into());
        }

        let mut seen = vec![usize::MAX; n];
        for row in 0..n {
            for col in 0..n {
                let v = at(row, col);
                if seen[v] == row {
                    return Err(GroupError::RowNotPermutation { row, value: v }.into());
                }
                seen[v] = row;
            }
        }
        seen.fill(usize::MAX);
        for col in 0..n {
            for row in 0..n {
                let v = at(row, col);
                if seen[v] == col {
                    return Err(GroupError::ColumnNotPermutation { col, value: v }.into());
                }
                seen[v] = col;
            }
        }

        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            check_associative_exhaustive(n, &flat)?;
        } else {
            check_associative_by_generators(n, &flat)?;
        }

        // Latin rows guarantee a unique right inverse; associativity makes it two-sided.
        let inv: Vec<usize> = (0..n)
            .map(|i| {
                (0..n)
                    .find(|&j| at(i, j) == 0)
                    .expect("Latin row contains 0")
            })
            .collect();
        debug_assert!((0..n).all(|i| at(inv[i], i) == 0));

        Ok(FiniteGroup {
            n,
            table: flat,
            inv,
            label: label.into(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Index of `g_i g_j`.
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n + j]
    }

    /// Index of `g_i^-1`.
    #[inline]
    pub fn inverse_index(&self, i: usize) -> usize {
        self.inv[i]
    }

    /// Same order and multiplication table, ignoring labels.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.n == other.n && self.table == other.table
    }

    /// The Cayley table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// Order of the element `g_i`.
    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.mul(cur, i);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Sign of the permutation `i -> g_i^-1` (+1 or -1).
    pub fn inversion_sign(&self) -> i32 {
        // Inversion is an involution: the sign is (-1)^(number of 2-cycles).
        let swaps = (0..self.n).filter(|&i| self.inv[i] > i).count();
        if swaps % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The cyclic group `<g>` of order `n`, element `k` being `g^k`.
    pub fn cyclic(n: usize) -> Result<Self> {
        check_capacity(n, &format!("C{n}"))?;
        Self::from_fn(n, format!("C{n}"), |i, j| (i + j) % n)
    }

    /// The dihedral group of order `2m`.
    pub fn dihedral(m: usize) -> Result<Self> {
        check_capacity(2 * m, &format!("D{m}"))?;
        // (s^a r^b)(s^c r^d) = s^(a+c) r^((-1)^c b + d)
        let split = |x: usize| (x / m, x % m);
        Self::from_fn(2 * m, format!("D{m}"), |x, y| {
            let ((a, b), (c, d)) = (split(x), split(y));
            let rot = (if c == 0 { b + d } else { m - b + d }) % m;
            ((a + c) % 2) * m + rot
        })
    }

    /// The symmetric group on `m <= 5` points.
    pub fn symmetric(m: usize) -> Result<Self> {
        if m == 0 || m > 5 {
            return Err(Error::Capacity(format!(
                "S{m}: symmetric groups are supported for 1 <= m <= 5"
            )));
        }
        let perms = lexicographic_permutations(m);
        let index_of = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        Self::from_fn(perms.len(), format!("S{m}"), |x, y| {
            let (a, b) = (&perms[x], &perms[y]);
            let composed: Vec<usize> = (0..m).map(|i| a[b[i]]).collect();
            index_of(&composed)
        })
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion8() -> Result<Self> {
        // unit index: 0 = 1, 1 = i, 2 = j, 3 = k; element index = 2 * unit + (negative as usize)
        const UNIT: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        Self::from_fn(8, "Q8".to_string(), |x, y| {
            let (u, su) = (x / 2, x % 2 == 1);
            let (v, sv) = (y / 2, y % 2 == 1);
            let (w, sw) = UNIT[u][v];
            2 * w + (su ^ sv ^ sw) as usize
        })
    }

    /// `G x H` with lexicographically ordered pairs.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        let label = format!("{}x{}", g.label, h.label);
        let n = g.n * h.n;
        check_capacity(n, &label)?;
        Self::from_fn(n, label, |x, y| {
            let (g1, h1) = (x / h.n, x % h.n);
            let (g2, h2) = (y / h.n, y % h.n);
            g.mul(g1, g2) * h.n + h.mul(h1, h2)
        })
    }

    fn from_fn(n: usize, label: String, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::from_table(n, table, label)
    }

    /// Loads a Cayley-table JSON file and re-validates it.
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: CayleyTableFile = serde_json::from_str(text)
            .map_err(|e| Error::parse("Cayley table JSON", text.trim(), e.to_string()))?;
        Self::from_table(file.n, file.table, file.label)
    }

    pub fn to_json_file_format(&self) -> CayleyTableFile {
        CayleyTableFile {
            n: self.n,
            label: self.label.clone(),
            table: self.table(),
        }
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label, self.n)
    }
}

/// On-disk Cayley table: `{ "n": 4, "label": "V4", "table": [[0,1,2,3], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyTableFile {
    pub n: usize,
    pub label: String,
    pub table: Vec<Vec<usize>>,
}

fn check_capacity(n: usize, label: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::Capacity(format!("{label}: order must be positive")));
    }
    if n > MAX_ORDER {
        return Err(Error::Capacity(format!(
            "{label}: order {n} exceeds {MAX_ORDER}"
        )));
    }
    Ok(())
}

fn check_associative_exhaustive(n: usize, t: &[usize]) -> Result<()> {
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b];
            for c in 0..n {
                if t[ab * n + c] != t[a * n + t[b * n + c]] {
                    return Err(GroupError::NotAssociative { a, b, c }.into());
                }
            }
        }
    }
    Ok(())
}

/// Light's test: if `(x s) y = x (s y)` for every `x, y` and every `s` in a
/// generating set, the operation is associative. The generating set is grown
/// greedily until its multiplicative closure covers the table.
fn check_associative_by_generators(n: usize, t: &[usize]) -> Result<()> {
    let mut in_closure = vec![false; n];
    in_closure[0] = true;
    let mut generators: Vec<usize> = Vec::new();
    while let Some(s) = (0..n).find(|&i| !in_closure[i]) {
        generators.push(s);
        let mut frontier: Vec<usize> = (0..n).filter(|&i| in_closure[i]).collect();
        while let Some(x) = frontier.pop() {
            for &g in &generators {
                let y = t[x * n + g];
                if !in_closure[y] {
                    in_closure[y] = true;
                    frontier.push(y);
                }
            }
        }
    }
    for &s in &generators {
        for a in 0..n {
            let as_ = t[a * n + s];
            for c in 0..n {
                if t[as_ * n + c] != t[a * n + t[s * n + c]] {
                    return Err(GroupError::NotAssociative { a, b: s, c }.into());
                }
            }
        }
    }
    Ok(())
}

fn lexicographic_permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// A parsed group spec string: `C<n>`, `D<m>`, `S<m>`, `Q8`, products joined
/// with `x` (`C2xC2`), or `@path/to/table.json`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion8,
    Product(Vec<GroupSpec>),
    File(String),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
            GroupSpec::Dihedral(m) => FiniteGroup::dihedral(*m),
            GroupSpec::Symmetric(m) => FiniteGroup::symmetric(*m),
            GroupSpec::Quaternion8 => FiniteGroup::quaternion8(),
            GroupSpec::File(path) => FiniteGroup::from_json_file(Path::new(path)),
            GroupSpec::Product(factors) => {
                let mut iter = factors.iter();
                let first = iter
                    .next()
                    .expect("products have at least two factors")
                    .build()?;
                iter.try_fold(first, |acc, f| {
                    FiniteGroup::direct_product(&acc, &f.build()?)
                })
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(path) = t.strip_prefix('@') {
            if path.is_empty() {
                return Err(Error::parse("group spec", t, "missing file path after `@`"));
            }
            return Ok(GroupSpec::File(path.to_string()));
        }
        let parts: Vec<&str> = t.split('x').collect();
        if parts.len() > 1 {
            return parts
                .iter()
                .map(|p| parse_atom(p))
                .collect::<Result<Vec<_>>>()
                .map(GroupSpec::Product);
        }
        parse_atom(t)
    }
}

fn parse_atom(token: &str) -> Result<GroupSpec> {
    if token == "Q8" {
        return Ok(GroupSpec::Quaternion8);
    }
    let mut chars = token.chars();
    let kind = chars.next();
    let num: usize = chars.as_str().parse().map_err(|_| {
        Error::parse(
            "group spec",
            token,
            "expected C<n>, D<m>, S<m>, Q8, a product like C2xC2, or @file.json",
        )
    })?;
    if num == 0 {
        return Err(Error::parse(
            "group spec",
            token,
            "parameter must be positive",
        ));
    }
    match kind {
        Some('C') => Ok(GroupSpec::Cyclic(num)),
        Some('D') => Ok(GroupSpec::Dihedral(num)),
        Some('S') => Ok(GroupSpec::Symmetric(num)),
        _ => Err(Error::parse(
            "group spec",
            token,
            "expected C<n>, D<m>, S<m>, Q8, a product like C2xC2, or @file.json",
        )),
    }
}

/// Parses and builds a group spec string.
pub fn parse_group(spec: &str) -> Result<FiniteGroup> {
    spec.parse::<GroupSpec>()?.build()
}

/// Spec strings of the built-in test corpus.
pub const CATALOG: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "D3", "D4", "D5",
    "D6", "S3", "S4", "Q8", "C2xC2", "C2xC4", "C2xC2xC2",
];

/// Every catalog group of order at most `max_order`, in catalog order.
pub fn catalog(max_order: usize) -> Vec<FiniteGroup> {
    CATALOG
        .iter()
        .map(|s| parse_group(s).expect("catalog groups are valid"))
        .filter(|g| g.order() <= max_order)
        .collect()
}
