//! 2D grid placements and named registers for every arithmetic unit.
//!
//! Each physical qubit sits on a square grid at a signed `row` (the binary
//! weight index, so `B_{-1}` lives at row −1) and a non-negative `col`
//! (columns left to right as drawn). Two qubits may interact only when their
//! Manhattan distance is exactly one.
//!
//! Every column is a *column register*: a name plus a run of consecutive rows,
//! where the subscript of each qubit equals its row. The multiplier and the
//! divider additionally name the upper part of some columns differently
//! (`A_j` is `B_{N+j}` in the multiplier, `B_j` is `B'_{j+N}` in the divider);
//! those names are exposed as *aliases* that resolve to a column register
//! with a fixed subscript offset.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense 0-based qubit identifier within one circuit.
pub type QubitId = usize;

/// Position of a qubit on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridCoord {
    /// Weight index; negative rows are allowed.
    pub row: i32,
    /// Column, counted from the left.
    pub col: u32,
}

impl GridCoord {
    pub const fn new(row: i32, col: u32) -> Self {
        Self { row, col }
    }

    /// Manhattan distance to another coordinate.
    pub fn distance(self, other: GridCoord) -> u32 {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col)
    }
}

/// Register name and subscript of a qubit, e.g. `C[-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QubitLabel {
    pub register: String,
    pub subscript: i32,
}

impl std::fmt::Display for QubitLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}[{}]", self.register, self.subscript)
    }
}

/// Immutable map from qubit to grid coordinate and label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GridLayout {
    coords: Vec<GridCoord>,
    labels: Vec<QubitLabel>,
    by_coord: HashMap<GridCoord, QubitId>,
}

impl GridLayout {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a qubit; its id is the current qubit count.
    pub fn push(&mut self, label: QubitLabel, coord: GridCoord) -> Result<QubitId> {
        if let Some(&other) = self.by_coord.get(&coord) {
            return Err(Error::LayoutConflict(format!(
                "{label} and {} share row {} col {}",
                self.labels[other], coord.row, coord.col
            )));
        }
        let id = self.coords.len();
        self.coords.push(coord);
        self.labels.push(label);
        self.by_coord.insert(coord, id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, q: QubitId) -> Result<GridCoord> {
        self.coords.get(q).copied().ok_or(Error::QubitOutOfRange {
            qubit: q,
            count: self.len(),
        })
    }

    pub fn label(&self, q: QubitId) -> Result<&QubitLabel> {
        self.labels.get(q).ok_or(Error::QubitOutOfRange {
            qubit: q,
            count: self.len(),
        })
    }

    /// Qubit placed at the given grid position, if any.
    pub fn at(&self, row: i32, col: u32) -> Option<QubitId> {
        self.by_coord.get(&GridCoord::new(row, col)).copied()
    }

    /// Iterates `(id, coord, label)` in id order.
    pub fn iter(&self) -> impl Iterator<Item = (QubitId, GridCoord, &QubitLabel)> {
        self.coords
            .iter()
            .zip(&self.labels)
            .enumerate()
            .map(|(i, (c, l))| (i, *c, l))
    }

    /// True iff the two qubits are at Manhattan distance exactly one.
    pub fn adjacent(&self, p: QubitId, q: QubitId) -> Result<bool> {
        Ok(self.coord(p)?.distance(self.coord(q)?) == 1)
    }
}

/// Free-function form of [`GridLayout::adjacent`].
pub fn adjacent(layout: &GridLayout, p: QubitId, q: QubitId) -> Result<bool> {
    layout.adjacent(p, q)
}

/// A run of qubits whose subscripts descend from `hi` by one per entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnRegister {
    pub hi: i32,
    /// Most-significant first: `qubits[i]` has subscript `hi - i`.
    pub qubits: Vec<QubitId>,
}

impl ColumnRegister {
    pub fn lo(&self) -> i32 {
        self.hi - self.qubits.len() as i32 + 1
    }

    pub fn get(&self, subscript: i32) -> Option<QubitId> {
        if subscript > self.hi || subscript < self.lo() {
            return None;
        }
        Some(self.qubits[(self.hi - subscript) as usize])
    }
}

/// `alias_j` resolves to `column_{j + offset}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alias {
    pub column: String,
    pub offset: i32,
}

/// Named registers of a layout: column registers plus offset aliases.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RegisterMap {
    columns: BTreeMap<String, ColumnRegister>,
    aliases: BTreeMap<String, Alias>,
}

impl RegisterMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Groups the labels of a layout into column registers. Fails if a
    /// register has gaps or repeated subscripts.
    pub fn from_layout(layout: &GridLayout) -> Result<Self> {
        let mut groups: BTreeMap<String, Vec<(i32, QubitId)>> = BTreeMap::new();
        for (q, _, label) in layout.iter() {
            groups
                .entry(label.register.clone())
                .or_default()
                .push((label.subscript, q));
        }
        let mut map = Self::new();
        for (name, mut entries) in groups {
            entries.sort_by_key(|e| std::cmp::Reverse(e.0));
            for w in entries.windows(2) {
                if w[0].0 != w[1].0 + 1 {
                    return Err(Error::LayoutConflict(format!(
                        "register {name} is not a contiguous run of subscripts"
                    )));
                }
            }
            let hi = entries[0].0;
            map.columns.insert(
                name,
                ColumnRegister {
                    hi,
                    qubits: entries.into_iter().map(|(_, q)| q).collect(),
                },
            );
        }
        Ok(map)
    }

    pub fn add_alias(&mut self, name: &str, column: &str, offset: i32) {
        self.aliases.insert(
            name.to_string(),
            Alias {
                column: column.to_string(),
                offset,
            },
        );
    }

    /// Column register by name (aliases are not columns).
    pub fn column(&self, name: &str) -> Option<&ColumnRegister> {
        self.columns.get(name)
    }

    /// Whole column register, most-significant first.
    pub fn get(&self, name: &str) -> Option<&[QubitId]> {
        self.columns.get(name).map(|c| c.qubits.as_slice())
    }

    pub fn column_names(&self) -> impl Iterator<Item = &str> {
        self.columns.keys().map(String::as_str)
    }

    pub fn aliases(&self) -> impl Iterator<Item = (&str, &Alias)> {
        self.aliases.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Resolves `name[subscript]` through columns and aliases.
    pub fn qubit(&self, name: &str, subscript: i32) -> Result<QubitId> {
        let (column, sub) = match self.aliases.get(name) {
            Some(alias) => (alias.column.as_str(), subscript + alias.offset),
            None => (name, subscript),
        };
        let reg = self
            .columns
            .get(column)
            .ok_or_else(|| Error::UnknownRegister(name.to_string()))?;
        reg.get(sub)
            .ok_or_else(|| Error::UnknownRegister(format!("{name}[{subscript}]")))
    }

    /// `name[hi], name[hi-1], …, name[lo]`, most-significant first.
    pub fn range(&self, name: &str, hi: i32, lo: i32) -> Result<Vec<QubitId>> {
        (lo..=hi).rev().map(|k| self.qubit(name, k)).collect()
    }
}

/// Wiring of the one-bit and multi-bit adders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AdderVariant {
    /// Columns A, C, B: both addends touch the carry column.
    I,
    /// Columns A, B, C: only B touches the carry column.
    II,
    /// Columns A, B, C for the in-place adder (B has an extra top row).
    III,
}

/// Column specification used by the layout builders.
struct ColumnSpec<'a> {
    name: &'a str,
    hi: i32,
    lo: i32,
}

fn columns(specs: &[ColumnSpec<'_>]) -> Result<(GridLayout, RegisterMap)> {
    let mut layout = GridLayout::new();
    for (col, spec) in specs.iter().enumerate() {
        for row in (spec.lo..=spec.hi).rev() {
            layout.push(
                QubitLabel {
                    register: spec.name.to_string(),
                    subscript: row,
                },
                GridCoord::new(row, col as u32),
            )?;
        }
    }
    let registers = RegisterMap::from_layout(&layout)?;
    Ok((layout, registers))
}

fn require_positive(name: &str, value: usize) -> Result<i32> {
    if value == 0 {
        return Err(Error::InvalidParameter(format!(
            "{name} must be at least 1"
        )));
    }
    i32::try_from(value).map_err(|_| Error::InvalidParameter(format!("{name} too large")))
}

/// Adder layouts with `3N+2` qubits.
///
/// * I: `A_{N-1..0} | C_{N+1..0} | B_{N-1..0}`
/// * II: `A_{N-1..0} | B_{N-1..0} | C_{N+1..0}`
/// * III: `A_{N-1..0} | B_{N..0} | C_{N..0}`
pub fn make_adder_layout(n: usize, variant: AdderVariant) -> Result<(GridLayout, RegisterMap)> {
    let n = require_positive("N", n)?;
    let a = ColumnSpec {
        name: "A",
        hi: n - 1,
        lo: 0,
    };
    match variant {
        AdderVariant::I => columns(&[
            a,
            ColumnSpec {
                name: "C",
                hi: n + 1,
                lo: 0,
            },
            ColumnSpec {
                name: "B",
                hi: n - 1,
                lo: 0,
            },
        ]),
        AdderVariant::II => columns(&[
            a,
            ColumnSpec {
                name: "B",
                hi: n - 1,
                lo: 0,
            },
            ColumnSpec {
                name: "C",
                hi: n + 1,
                lo: 0,
            },
        ]),
        AdderVariant::III => columns(&[
            a,
            ColumnSpec {
                name: "B",
                hi: n,
                lo: 0,
            },
            ColumnSpec {
                name: "C",
                hi: n,
                lo: 0,
            },
        ]),
    }
}

/// Increment layout: `A_{N..0} | C_{N+1..0}`, `2N+3` qubits.
pub fn make_plus1_layout(n: usize) -> Result<(GridLayout, RegisterMap)> {
    let n = require_positive("N", n)?;
    columns(&[
        ColumnSpec {
            name: "A",
            hi: n,
            lo: 0,
        },
        ColumnSpec {
            name: "C",
            hi: n + 1,
            lo: 0,
        },
    ])
}

/// Subtractor layout: `A_{N-1..0} | B_{N..0} | C_{N+1..0}`, `3N+3` qubits.
///
/// This is the variant-II adder wiring plus the sign qubit `B_N` that the
/// complement stage needs.
pub fn make_subtractor_layout(n: usize) -> Result<(GridLayout, RegisterMap)> {
    let n = require_positive("N", n)?;
    columns(&[
        ColumnSpec {
            name: "A",
            hi: n - 1,
            lo: 0,
        },
        ColumnSpec {
            name: "B",
            hi: n,
            lo: 0,
        },
        ColumnSpec {
            name: "C",
            hi: n + 1,
            lo: 0,
        },
    ])
}

/// Multiplier layout, four columns:
/// `D_{2N-1..-1} | B_{2N-1..-1} | C_{2N..-1} | E_{2N..-1}`.
///
/// The second column holds the multiplicand in its upper half; `A_j` is an
/// alias of `B_{N+j}`. The columns add up to `8N+6` qubits.
pub fn make_multiplier_layout(n: usize) -> Result<(GridLayout, RegisterMap)> {
    let n = require_positive("N", n)?;
    let (layout, mut registers) = columns(&[
        ColumnSpec {
            name: "D",
            hi: 2 * n - 1,
            lo: -1,
        },
        ColumnSpec {
            name: "B",
            hi: 2 * n - 1,
            lo: -1,
        },
        ColumnSpec {
            name: "C",
            hi: 2 * n,
            lo: -1,
        },
        ColumnSpec {
            name: "E",
            hi: 2 * n,
            lo: -1,
        },
    ])?;
    registers.add_alias("A", "B", n);
    Ok((layout, registers))
}

/// Divider layout, five columns `D' | B' | A | C | E` over rows `0..=N+M`,
/// plus `D'_{-1}, B'_{-1}, A_{-1}, C_{-1}` when the remainder is kept.
///
/// That is `5(N+M+1)` qubits, or `5(N+M+1)+4` with the remainder row.
/// Upper-half aliases: `B_j = B'_{j+N}`, `D_j = D'_{j+N}`, `A'_j = A_{j+N}`,
/// `C'_j = C_{j+N}`, `E'_j = E_{j+N}`.
pub fn make_divider_layout(
    n: usize,
    m: usize,
    with_remainder: bool,
) -> Result<(GridLayout, RegisterMap)> {
    let n_i = require_positive("N", n)?;
    let m_i = require_positive("M", m)?;
    if m > n {
        return Err(Error::InvalidParameter(format!("M = {m} exceeds N = {n}")));
    }
    let top = n_i + m_i;
    let lo = if with_remainder { -1 } else { 0 };
    let (layout, mut registers) = columns(&[
        ColumnSpec {
            name: "D'",
            hi: top,
            lo,
        },
        ColumnSpec {
            name: "B'",
            hi: top,
            lo,
        },
        ColumnSpec {
            name: "A",
            hi: top,
            lo,
        },
        ColumnSpec {
            name: "C",
            hi: top,
            lo,
        },
        ColumnSpec {
            name: "E",
            hi: top,
            lo: 0,
        },
    ])?;
    registers.add_alias("B", "B'", n_i);
    registers.add_alias("D", "D'", n_i);
    registers.add_alias("A'", "A", n_i);
    registers.add_alias("C'", "C", n_i);
    registers.add_alias("E'", "E", n_i);
    Ok((layout, registers))
}
