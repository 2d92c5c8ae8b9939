//! Where a graph comes from: a generator spec string or a file.
//!
//! Generator specs are `kind:args[@seed]`:
//!
//! | spec | graph |
//! |---|---|
//! | `er:N:D` | Erdős–Rényi with `p = D/N` |
//! | `erp:N:P` | Erdős–Rényi with edge probability `P` |
//! | `ba:N:M` | Barabási–Albert, `M` edges per new vertex |
//! | `sbm:N:K:PIN:POUT` | stochastic block model with `K` blocks |
//! | `complete:N`, `cycle:N`, `path:N`, `star:L`, `petersen` | named graphs |

use crate::error::{CliError, CliResult};
use mqo_core::graph::{generate, named, parse_dimacs, read_canonical, GraphGenSpec, GraphKind};
use mqo_core::mqo::GraphFamily;
use mqo_core::Graph;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FileFormat {
    Canonical,
    Dimacs,
}

/// Enough to rebuild the graph a record was computed on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum GraphDescriptor {
    Generated { spec: String },
    File { path: String, format: FileFormat },
}

#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Random(GraphGenSpec),
    Named(String, Graph),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn num<T: std::str::FromStr>(field: &str, spec: &str) -> CliResult<T> {
    field
        .parse()
        .map_err(|_| usage(format!("bad number {field:?} in generator spec {spec:?}")))
}

/// Parses a generator spec; `default_seed` applies when no `@seed` is given.
pub fn parse_gen_spec(spec: &str, default_seed: u64) -> CliResult<GenSpec> {
    let (body, seed) = match spec.split_once('@') {
        Some((body, seed)) => (body, num(seed, spec)?),
        None => (spec, default_seed),
    };
    let parts: Vec<&str> = body.split(':').collect();
    let arity = |k: usize| -> CliResult<()> {
        if parts.len() == k + 1 {
            Ok(())
        } else {
            Err(usage(format!(
                "generator {:?} takes {k} arguments in {spec:?}",
                parts[0]
            )))
        }
    };
    let random = |kind: GraphKind| GenSpec::Random(GraphGenSpec { kind, seed });
    let named = |g: Graph| GenSpec::Named(body.to_string(), g);
    let out = match parts[0] {
        "er" => {
            arity(2)?;
            let n: usize = num(parts[1], spec)?;
            let d: f64 = num(parts[2], spec)?;
            random(GraphGenSpec::erdos_renyi_degree(n, d, seed).kind)
        }
        "erp" => {
            arity(2)?;
            random(GraphKind::ErdosRenyi {
                n: num(parts[1], spec)?,
                p: num(parts[2], spec)?,
            })
        }
        "ba" => {
            arity(2)?;
            random(GraphKind::BarabasiAlbert {
                n: num(parts[1], spec)?,
                m_attach: num(parts[2], spec)?,
            })
        }
        "sbm" => {
            arity(4)?;
            random(GraphKind::StochasticBlock {
                n: num(parts[1], spec)?,
                k: num(parts[2], spec)?,
                p_in: num(parts[3], spec)?,
                p_out: num(parts[4], spec)?,
            })
        }
        "complete" => {
            arity(1)?;
            named(named::complete(num(parts[1], spec)?))
        }
        "cycle" => {
            arity(1)?;
            let n: usize = num(parts[1], spec)?;
            if n < 3 {
                return Err(usage("a cycle needs at least 3 vertices"));
            }
            named(named::cycle(n))
        }
        "path" => {
            arity(1)?;
            named(named::path(num(parts[1], spec)?))
        }
        "star" => {
            arity(1)?;
            named(named::star(num(parts[1], spec)?))
        }
        "petersen" => {
            arity(0)?;
            named(named::petersen())
        }
        other => return Err(usage(format!("unknown generator {other:?} in {spec:?}"))),
    };
    if let GenSpec::Random(g) = &out {
        g.validate()?;
    }
    Ok(out)
}

impl GenSpec {
    pub fn build(&self) -> CliResult<Graph> {
        Ok(match self {
            GenSpec::Random(spec) => generate(spec)?,
            GenSpec::Named(_, g) => g.clone(),
        })
    }

    /// Canonical spec string with the seed made explicit.
    pub fn canonical(&self) -> String {
        match self {
            GenSpec::Random(GraphGenSpec { kind, seed }) => match *kind {
                GraphKind::ErdosRenyi { n, p } => format!("erp:{n}:{p}@{seed}"),
                GraphKind::BarabasiAlbert { n, m_attach } => format!("ba:{n}:{m_attach}@{seed}"),
                GraphKind::StochasticBlock { n, k, p_in, p_out } => format!("sbm:{n}:{k}:{p_in}:{p_out}@{seed}"),
            },
            GenSpec::Named(body, _) => body.clone(),
        }
    }

    pub fn family(&self) -> GraphFamily {
        match self {
            GenSpec::Random(GraphGenSpec { kind, .. }) => match kind {
                GraphKind::ErdosRenyi { .. } => GraphFamily::ErdosRenyi,
                GraphKind::BarabasiAlbert { .. } => GraphFamily::BarabasiAlbert,
                GraphKind::StochasticBlock { .. } => GraphFamily::StochasticBlock,
            },
            GenSpec::Named(..) => GraphFamily::ErdosRenyi,
        }
    }
}

/// DIMACS if the first meaningful line is a `c` or `p` line, else canonical.
pub fn detect_format(text: &str) -> FileFormat {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty());
    match first {
        Some(l) if l.starts_with('c') || l.starts_with('p') => FileFormat::Dimacs,
        _ => FileFormat::Canonical,
    }
}

pub fn read_graph_file(path: &Path) -> CliResult<(Graph, FileFormat)> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read graph {}: {e}", path.display())))?;
    let format = detect_format(&text);
    let g = match format {
        FileFormat::Dimacs => {
            let parsed = parse_dimacs(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            for w in &parsed.warnings {
                log::warn!("{}: {w}", path.display());
            }
            parsed.graph
        }
        FileFormat::Canonical => read_canonical(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?,
    };
    Ok((g, format))
}

impl GraphDescriptor {
    /// Rebuilds the graph; generated specs always carry their seed.
    pub fn load(&self) -> CliResult<Graph> {
        match self {
            GraphDescriptor::Generated { spec } => parse_gen_spec(spec, 0)?.build(),
            GraphDescriptor::File { path, .. } => Ok(read_graph_file(Path::new(path))?.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_spec_uses_degree() {
        let spec = parse_gen_spec("er:1000:100@7", 0).unwrap();
        assert_eq!(spec.canonical(), "erp:1000:0.1@7");
        assert_eq!(parse_gen_spec("er:10:2", 3).unwrap().canonical(), "erp:10:0.2@3");
    }

    #[test]
    fn canonical_spec_round_trips() {
        for s in [
            "erp:50:0.2@1",
            "ba:40:3@2",
            "sbm:40:2:0.5:0.05@9",
            "petersen",
            "complete:4",
        ] {
            let spec = parse_gen_spec(s, 0).unwrap();
            assert_eq!(spec.canonical(), s);
            assert_eq!(
                parse_gen_spec(&spec.canonical(), 5).unwrap().build().unwrap(),
                spec.build().unwrap()
            );
        }
    }

    #[test]
    fn bad_specs() {
        for s in [
            "er:10",
            "er:x:2",
            "zz:1",
            "erp:10:1.5",
            "cycle:2",
            "petersen:3",
            "er:10:2@x",
        ] {
            assert!(matches!(parse_gen_spec(s, 0), Err(CliError::Usage(_))), "{s}");
        }
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format("c hi\np edge 2 1\ne 1 2\n"), FileFormat::Dimacs);
        assert_eq!(detect_format("\n2 1\n0 1\n"), FileFormat::Canonical);
    }
}
