use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use gaindex::{parse_graph6, Graph};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// One graph per line.
    Graph6,
    /// `n <count>` header, then one `u v` pair per line; one graph per file.
    Edgelist,
}

/// A graph and where it came from (line 1 for edge-list files).
pub struct Sourced {
    pub source: String,
    pub line: usize,
    pub graph: Graph,
}

fn read_source(path: &Path) -> Result<(String, String), String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|e| format!("<stdin>: {e}"))?;
        Ok(("<stdin>".into(), text))
    } else {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Ok((path.display().to_string(), text))
    }
}

/// Read every graph from `files`, or from standard input when empty.
pub fn read_graphs(files: &[PathBuf], format: Format) -> Result<Vec<Sourced>, String> {
    let stdin = [PathBuf::from("-")];
    let files = if files.is_empty() { &stdin[..] } else { files };
    let mut out = Vec::new();
    for path in files {
        let (name, text) = read_source(path)?;
        match format {
            Format::Graph6 => {
                for (i, line) in text.lines().enumerate() {
                    let line_no = i + 1;
                    let trimmed = line.trim_end_matches('\r');
                    if trimmed.trim().is_empty() {
                        continue;
                    }
                    let graph = parse_graph6(trimmed.as_bytes()).map_err(|e| format!("{name}:{line_no}: {e}"))?;
                    out.push(Sourced { source: name.clone(), line: line_no, graph });
                }
            }
            Format::Edgelist => {
                let graph = Graph::parse_edge_list(&text).map_err(|e| format!("{name}: {e}"))?;
                out.push(Sourced { source: name.clone(), line: 1, graph });
            }
        }
    }
    if out.is_empty() {
        return Err("no graphs in input".into());
    }
    Ok(out)
}
