use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lambda::LambdaModule;

use super::QuandleError;

/// A finite quandle as its Cayley table: `get(x, y)` is `x^y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuandleTable {
    order: usize,
    cells: Vec<usize>,
}

/// Which quandle axiom failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// Every right translation `x ↦ x^y` is a bijection.
    RightInvertible,
    /// `(a^b)^c = (a^c)^(b^c)`.
    SelfDistributive,
    /// `a^a = a`.
    Idempotent,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::RightInvertible => "(i) right translations are bijections",
            Axiom::SelfDistributive => "(ii) right self-distributivity",
            Axiom::Idempotent => "(iii) idempotence",
        })
    }
}

/// The first violated axiom with its lexicographically smallest witness.
///
/// Witnesses: for (i) `(x1, x2, y)` with `x1 < x2` and `x1^y = x2^y`; for
/// (ii) `(a, b, c)`; for (iii) `(a, a, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: (usize, usize, usize),
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = self.witness;
        write!(f, "axiom {} fails at ({a}, {b}, {c})", self.axiom)
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl QuandleTable {
    /// Builds a table from rows, where `rows[x][y] = x^y`. Entries must lie in
    /// `0..n`; the axioms are not checked here.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, QuandleError> {
        let order = rows.len();
        if order == 0 {
            return Err(QuandleError::Malformed("table is empty".into()));
        }
        let mut cells = Vec::with_capacity(order * order);
        for (x, row) in rows.into_iter().enumerate() {
            if row.len() != order {
                return Err(QuandleError::Malformed(format!("row {x} has {} entries, expected {order}", row.len())));
            }
            if let Some((y, &v)) = row.iter().enumerate().find(|(_, &v)| v >= order) {
                return Err(QuandleError::Malformed(format!("entry ({x}, {y}) = {v} is out of range")));
            }
            cells.extend(row);
        }
        Ok(QuandleTable { order, cells })
    }

    pub fn from_fn(order: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let cells = (0..order).flat_map(|x| (0..order).map(move |y| (x, y))).map(|(x, y)| op(x, y)).collect();
        QuandleTable { order, cells }
    }

    /// The trivial quandle `T_n`, with `x^y = x`.
    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, |x, _| x)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `x^y`.
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.order + y]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// The right translation `f_y: x ↦ x^y` as a vector.
    pub fn column(&self, y: usize) -> Vec<usize> {
        (0..self.order).map(|x| self.get(x, y)).collect()
    }

    /// Checks axioms (i), (ii), (iii) in that order.
    pub fn check_axioms(&self) -> Result<(), AxiomViolation> {
        let n = self.order;
        let mut collision: Option<(usize, usize, usize)> = None;
        for y in 0..n {
            let mut first = vec![usize::MAX; n];
            for x in 0..n {
                let v = self.get(x, y);
                if first[v] == usize::MAX {
                    first[v] = x;
                } else {
                    let w = (first[v], x, y);
                    if collision.is_none_or(|c| w < c) {
                        collision = Some(w);
                    }
                }
            }
        }
        if let Some(witness) = collision {
            return Err(AxiomViolation { axiom: Axiom::RightInvertible, witness });
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                for c in 0..n {
                    if self.get(ab, c) != self.get(self.get(a, c), self.get(b, c)) {
                        return Err(AxiomViolation { axiom: Axiom::SelfDistributive, witness: (a, b, c) });
                    }
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| self.get(a, a) != a) {
            return Err(AxiomViolation { axiom: Axiom::Idempotent, witness: (a, a, a) });
        }
        Ok(())
    }

    /// Orbits under all right translations and their inverses, each sorted,
    /// ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for x in 0..n {
            for y in 0..n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, self.get(x, y)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for x in 0..n {
            let r = find(&mut parent, x);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(x);
        }
        groups
    }

    pub fn is_connected(&self) -> bool {
        self.orbits().len() == 1
    }

    /// The dual quandle, `x^ȳ = f_y⁻¹(x)`. Requires axiom (i).
    pub fn dual(&self) -> QuandleTable {
        let n = self.order;
        let mut cells = vec![0; n * n];
        for y in 0..n {
            for x in 0..n {
                cells[self.get(x, y) * n + y] = x;
            }
        }
        QuandleTable { order: n, cells }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TableJson { order: self.order, table: self.rows() }).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, QuandleError> {
        let parsed: TableJson = serde_json::from_str(text).map_err(|e| QuandleError::Malformed(e.to_string()))?;
        if parsed.order != parsed.table.len() {
            return Err(QuandleError::Malformed(format!(
                "order {} does not match {} rows",
                parsed.order,
                parsed.table.len()
            )));
        }
        Self::from_rows(parsed.table)
    }

    /// `n` lines of `n` space-separated entries.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in self.cells.chunks(self.order) {
            let r: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&r.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, QuandleError> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .enumerate()
            .map(|(i, line)| {
                line.split_whitespace()
                    .map(|tok| {
                        tok.parse::<usize>()
                            .map_err(|_| QuandleError::Malformed(format!("line {}: bad entry {tok:?}", i + 1)))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(rows)
    }

    /// Parses either format, choosing JSON when the text starts with `{`.
    pub fn parse(text: &str) -> Result<Self, QuandleError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_text(text)
        }
    }
}

/// The Alexander quandle of `m`: `x^y = t x + (1 - t) y`.
pub fn alexander_table(m: &LambdaModule) -> QuandleTable {
    QuandleTable::from_fn(m.order(), |x, y| m.add(m.t(x), m.one_minus_t(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::Polynomial;

    #[test]
    fn trivial_module_gives_trivial_quandle() {
        let m = LambdaModule::linear(5, 1).unwrap();
        assert_eq!(alexander_table(&m), QuandleTable::trivial(5));
    }

    #[test]
    fn dihedral_three() {
        let t = alexander_table(&LambdaModule::linear(3, 2).unwrap());
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(t.get(x, y), (2 * x + 2 * y) % 3);
            }
        }
        assert!(t.check_axioms().is_ok());
    }

    #[test]
    fn axiom_failures() {
        let cols = QuandleTable::from_fn(4, |_, y| y);
        assert_eq!(cols.check_axioms(), Err(AxiomViolation { axiom: Axiom::RightInvertible, witness: (0, 1, 0) }));
        let shift = QuandleTable::from_fn(4, |x, _| (x + 1) % 4);
        assert_eq!(shift.check_axioms(), Err(AxiomViolation { axiom: Axiom::Idempotent, witness: (0, 0, 0) }));
        // Columns are bijections and x^x = x, but distributivity fails.
        let bad = QuandleTable::from_rows(vec![vec![0, 2, 1], vec![1, 1, 0], vec![2, 0, 2]]).unwrap();
        assert_eq!(bad.check_axioms().unwrap_err().axiom, Axiom::SelfDistributive);
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(QuandleTable::from_rows(vec![vec![0, 2], vec![1, 1]]), Err(QuandleError::Malformed(_))));
        assert!(matches!(QuandleTable::from_rows(vec![vec![0], vec![1, 1]]), Err(QuandleError::Malformed(_))));
        assert!(matches!(QuandleTable::from_rows(vec![]), Err(QuandleError::Malformed(_))));
        assert!(QuandleTable::from_json(r#"{"order": 3, "table": [[0,0],[1,1]]}"#).is_err());
        assert!(QuandleTable::from_text("0 1\n1 x\n").is_err());
    }

    #[test]
    fn orbits_of_examples() {
        assert_eq!(QuandleTable::trivial(4).orbits().len(), 4);
        let t = alexander_table(&LambdaModule::linear(9, 4).unwrap());
        let orbits = t.orbits();
        assert_eq!(orbits, vec![vec![0, 3, 6], vec![1, 4, 7], vec![2, 5, 8]]);
        let h = Polynomial::new(2, &[1, 1, 0, 1]).unwrap();
        assert!(alexander_table(&LambdaModule::from_polynomial(&h).unwrap()).is_connected());
        let h = Polynomial::new(2, &[1, 1, 1]).unwrap();
        let t = alexander_table(&LambdaModule::from_polynomial(&h).unwrap());
        assert_eq!(t.order(), 4);
        assert!(t.is_connected());
    }

    #[test]
    fn dual_is_inverse_t() {
        for (n, a) in [(5, 2), (9, 4), (8, 3), (7, 3)] {
            let m = LambdaModule::linear(n, a).unwrap();
            assert_eq!(alexander_table(&m).dual(), alexander_table(&m.inverted()));
        }
        assert_eq!(QuandleTable::trivial(6).dual(), QuandleTable::trivial(6));
        let t = alexander_table(&LambdaModule::linear(9, 2).unwrap());
        assert_eq!(t.dual().dual(), t);
    }

    #[test]
    fn formats_roundtrip() {
        let t = alexander_table(&LambdaModule::linear(5, 3).unwrap());
        assert_eq!(QuandleTable::parse(&t.to_json()).unwrap(), t);
        assert_eq!(QuandleTable::parse(&t.to_text()).unwrap(), t);
        assert_eq!(QuandleTable::trivial(2).to_text(), "0 0\n1 1\n");
        assert_eq!(QuandleTable::trivial(2).to_json(), r#"{"order":2,"table":[[0,0],[1,1]]}"#);
    }
}
