//! Line-oriented circuit text format.
//!
//! ```text
//! # circuit p1 n=1
//! qubits 5
//! layout grid
//! map A[0] 0 0
//! map C[2] 2 1
//! …
//! #@ alias C' C 1
//! #@ port input A unsigned 0
//! #@ port output C unsigned 3 4
//! #@ marker phi_I
//! cx 4 3
//! csx 3 2
//! x 0
//! ```
//!
//! Header lines come first: an optional name, the qubit count, and when a
//! layout is attached one `map` line per qubit in id order. `#@` pragmas
//! carry register aliases, ports (qubits listed most-significant first)
//! and markers; a marker line sits just before the gate it precedes. The
//! body holds only basis gates, so only lowered circuits can be printed.
//! Other lines starting with `#` and blank lines are ignored when parsing.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ir::{Circuit, Gate, GateKind, Marker, Port, PortRole};
use crate::layout::{GridCoord, GridLayout, QubitLabel, RegisterMap};

fn role_name(role: PortRole) -> &'static str {
    match role {
        PortRole::Input => "input",
        PortRole::Output => "output",
        PortRole::InOut => "inout",
    }
}

/// Renders a lowered circuit.
pub fn print(c: &Circuit) -> Result<String> {
    if !c.is_lowered() {
        return Err(Error::NotLowered);
    }
    let mut out = String::new();
    if !c.name.is_empty() {
        writeln!(out, "# circuit {}", c.name).expect("writing to a String");
    }
    writeln!(out, "qubits {}", c.qubit_count).expect("writing to a String");
    if let Some(layout) = &c.layout {
        out.push_str("layout grid\n");
        for (_, coord, label) in layout.iter() {
            writeln!(out, "map {label} {} {}", coord.row, coord.col).expect("writing to a String");
        }
    }
    if let Some(registers) = &c.registers {
        for (name, alias) in registers.aliases() {
            writeln!(out, "#@ alias {name} {} {}", alias.column, alias.offset)
                .expect("writing to a String");
        }
    }
    for p in &c.ports {
        let sign = if p.signed { "signed" } else { "unsigned" };
        let qubits: Vec<String> = p.qubits.iter().map(|q| q.to_string()).collect();
        writeln!(
            out,
            "#@ port {} {} {sign} {}",
            role_name(p.role),
            p.name,
            qubits.join(" ")
        )
        .expect("writing to a String");
    }
    let mut markers: Vec<&Marker> = c.markers.iter().collect();
    markers.sort_by_key(|m| m.position);
    let mut pending = markers.into_iter().peekable();
    for (i, g) in c.gates.iter().enumerate() {
        while let Some(m) = pending.next_if(|m| m.position <= i) {
            writeln!(out, "#@ marker {}", m.label).expect("writing to a String");
        }
        let line = match (g.kind, g.control) {
            (GateKind::X, _) => format!("x {}", g.target),
            (GateKind::Cnot, Some(ctrl)) => format!("cx {ctrl} {}", g.target),
            (GateKind::Csx, Some(ctrl)) => format!("csx {ctrl} {}", g.target),
            _ => return Err(Error::NotLowered),
        };
        out.push_str(&line);
        out.push('\n');
    }
    for m in pending {
        writeln!(out, "#@ marker {}", m.label).expect("writing to a String");
    }
    Ok(out)
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(token: Option<&str>, line: usize, what: &str) -> Result<T> {
    let token = token.ok_or_else(|| parse_error(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| parse_error(line, format!("bad {what} `{token}`")))
}

fn parse_label(token: &str, line: usize) -> Result<QubitLabel> {
    let bad = || parse_error(line, format!("bad qubit label `{token}`"));
    let open = token.rfind('[').ok_or_else(bad)?;
    let inner = token[open + 1..].strip_suffix(']').ok_or_else(bad)?;
    let register = &token[..open];
    if register.is_empty() {
        return Err(bad());
    }
    Ok(QubitLabel {
        register: register.to_string(),
        subscript: inner.parse().map_err(|_| bad())?,
    })
}

fn no_extra<'a>(mut tokens: impl Iterator<Item = &'a str>, line: usize) -> Result<()> {
    match tokens.next() {
        Some(t) => Err(parse_error(line, format!("unexpected `{t}`"))),
        None => Ok(()),
    }
}

/// Parses the text format back into a circuit.
pub fn parse(text: &str) -> Result<Circuit> {
    let mut name = String::new();
    let mut qubits: Option<usize> = None;
    let mut layout: Option<GridLayout> = None;
    let mut aliases: Vec<(String, String, i32)> = Vec::new();
    let mut ports = Vec::new();
    let mut markers = Vec::new();
    let mut gates = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("#@") {
            let mut t = rest.split_whitespace();
            match t.next() {
                Some("alias") => {
                    let alias = t
                        .next()
                        .ok_or_else(|| parse_error(ln, "missing alias name"))?;
                    let column = t
                        .next()
                        .ok_or_else(|| parse_error(ln, "missing alias column"))?;
                    let offset = number(t.next(), ln, "alias offset")?;
                    no_extra(t, ln)?;
                    aliases.push((alias.to_string(), column.to_string(), offset));
                }
                Some("port") => {
                    let role = match t.next() {
                        Some("input") => PortRole::Input,
                        Some("output") => PortRole::Output,
                        Some("inout") => PortRole::InOut,
                        other => return Err(parse_error(ln, format!("bad port role {other:?}"))),
                    };
                    let pname = t
                        .next()
                        .ok_or_else(|| parse_error(ln, "missing port name"))?;
                    let signed = match t.next() {
                        Some("signed") => true,
                        Some("unsigned") => false,
                        other => return Err(parse_error(ln, format!("bad port sign {other:?}"))),
                    };
                    let qs = t
                        .map(|q| number(Some(q), ln, "port qubit"))
                        .collect::<Result<Vec<usize>>>()?;
                    if qs.is_empty() {
                        return Err(parse_error(ln, "port without qubits"));
                    }
                    let mut port = Port::new(pname, role, qs);
                    port.signed = signed;
                    ports.push(port);
                }
                Some("marker") => {
                    let label = rest
                        .trim_start()
                        .strip_prefix("marker")
                        .unwrap_or("")
                        .trim();
                    if label.is_empty() {
                        return Err(parse_error(ln, "marker without label"));
                    }
                    markers.push(Marker {
                        label: label.to_string(),
                        position: gates.len(),
                    });
                }
                other => return Err(parse_error(ln, format!("unknown pragma {other:?}"))),
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("# circuit") {
            if rest.is_empty() || rest.starts_with(' ') {
                name = rest.trim().to_string();
                continue;
            }
        }
        if line.starts_with('#') {
            continue;
        }
        let mut t = line.split_whitespace();
        let keyword = t.next().unwrap_or_default();
        match keyword {
            "qubits" => {
                if qubits.is_some() {
                    return Err(parse_error(ln, "qubit count given twice"));
                }
                qubits = Some(number(t.next(), ln, "qubit count")?);
                no_extra(t, ln)?;
            }
            "layout" => {
                match t.next() {
                    Some("grid") => {}
                    other => return Err(parse_error(ln, format!("unsupported layout {other:?}"))),
                }
                no_extra(t, ln)?;
                layout = Some(GridLayout::new());
            }
            "map" => {
                let grid = layout
                    .as_mut()
                    .ok_or_else(|| parse_error(ln, "map before `layout grid`"))?;
                let label = parse_label(
                    t.next().ok_or_else(|| parse_error(ln, "missing label"))?,
                    ln,
                )?;
                let row = number(t.next(), ln, "row")?;
                let col = number(t.next(), ln, "column")?;
                no_extra(t, ln)?;
                grid.push(label, GridCoord::new(row, col))
                    .map_err(|e| parse_error(ln, e.to_string()))?;
            }
            "x" | "cx" | "csx" => {
                let count = qubits.ok_or_else(|| parse_error(ln, "gate before `qubits`"))?;
                let first: usize = number(t.next(), ln, "qubit")?;
                let gate = if keyword == "x" {
                    Gate::x(first)
                } else {
                    let target = number(t.next(), ln, "target qubit")?;
                    if keyword == "cx" {
                        Gate::cnot(first, target)
                    } else {
                        Gate::csx(first, target)
                    }
                };
                no_extra(t, ln)?;
                if let Some(q) = gate.qubits().find(|&q| q >= count) {
                    return Err(parse_error(
                        ln,
                        format!("qubit {q} out of range for {count} qubits"),
                    ));
                }
                if gate.control == Some(gate.target) {
                    return Err(parse_error(ln, "control equals target"));
                }
                gates.push(gate);
            }
            other => return Err(parse_error(ln, format!("unknown keyword `{other}`"))),
        }
    }
    let qubit_count = qubits.ok_or_else(|| parse_error(0, "missing `qubits` line"))?;
    let mut c = Circuit::new(qubit_count);
    if let Some(grid) = layout {
        if grid.len() != qubit_count {
            return Err(parse_error(
                0,
                format!("{} map lines for {qubit_count} qubits", grid.len()),
            ));
        }
        let mut registers = RegisterMap::from_layout(&grid)?;
        for (alias, column, offset) in &aliases {
            registers.add_alias(alias, column, *offset);
        }
        c.layout = Some(grid);
        c.registers = Some(registers);
    } else if !aliases.is_empty() {
        return Err(parse_error(0, "aliases need a layout"));
    }
    for p in &ports {
        if let Some(&q) = p.qubits.iter().find(|&&q| q >= qubit_count) {
            return Err(parse_error(
                0,
                format!("port {} names qubit {q} out of range", p.name),
            ));
        }
    }
    c.name = name;
    c.gates = gates;
    c.ports = ports;
    c.markers = markers;
    Ok(c)
}
