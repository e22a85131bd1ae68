//! CSV rendering of a solved meta-game: a header of edge labels `from->to`,
//! one row per path, then `value`, `defender_mix` and `attacker_mix` rows.

use std::fmt::Write;

use super::MetaGame;
use crate::roadmap::Roadmap;
use crate::{Error, Result};

pub fn meta_game_csv(g: &Roadmap, meta: &MetaGame) -> String {
    let mut out = String::from("path");
    for &e in &meta.paths.attackable_edges {
        let edge = &g.edges[e];
        write!(out, ",{}->{}", edge.from, edge.to).unwrap();
    }
    out.push('\n');
    for (path, row) in meta.paths.paths.iter().zip(&meta.matrix) {
        out.push_str(&path.label());
        for v in row {
            write!(out, ",{v:.6}").unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "value,{:.6}", meta.value).unwrap();
    for (name, mix) in [
        ("defender_mix", &meta.defender_mix),
        ("attacker_mix", &meta.attacker_mix),
    ] {
        out.push_str(name);
        for p in mix {
            write!(out, ",{p:.6}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetaGameDump {
    pub edge_labels: Vec<String>,
    pub path_labels: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
    pub value: f64,
    pub defender_mix: Vec<f64>,
    pub attacker_mix: Vec<f64>,
}

fn numbers(fields: &[&str], line: usize) -> Result<Vec<f64>> {
    fields
        .iter()
        .enumerate()
        .map(|(i, f)| {
            f.parse().map_err(|_| Error::Parse {
                line,
                column: i + 2,
                message: format!("not a number: {f:?}"),
            })
        })
        .collect()
}

pub fn parse_meta_game_csv(text: &str) -> Result<MetaGameDump> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let bad = |line, message: &str| Error::Parse {
        line,
        column: 1,
        message: message.to_string(),
    };
    let (_, header) = lines.next().ok_or_else(|| bad(1, "empty meta-game dump"))?;
    let mut header = header.split(',');
    if header.next() != Some("path") {
        return Err(bad(1, "header must start with `path`"));
    }
    let edge_labels: Vec<String> = header.map(str::to_string).collect();
    let mut dump = MetaGameDump {
        edge_labels,
        path_labels: vec![],
        matrix: vec![],
        value: f64::NAN,
        defender_mix: vec![],
        attacker_mix: vec![],
    };
    for (n, line) in lines {
        let fields: Vec<&str> = line.split(',').collect();
        let values = numbers(&fields[1..], n)?;
        match fields[0] {
            "value" => {
                dump.value = *values.first().ok_or_else(|| bad(n, "missing value"))?;
            }
            "defender_mix" => dump.defender_mix = values,
            "attacker_mix" => dump.attacker_mix = values,
            label => {
                if values.len() != dump.edge_labels.len() {
                    return Err(bad(n, "row width differs from header"));
                }
                dump.path_labels.push(label.to_string());
                dump.matrix.push(values);
            }
        }
    }
    if dump.value.is_nan() {
        return Err(bad(text.lines().count(), "missing `value` row"));
    }
    Ok(dump)
}
