//! Resolving table and fusion arguments: a file path, or the name of a
//! bundled table.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use brauer_core::corpus;
use brauer_core::table::{parse_fusion, parse_table, CharacterTable, FusionKind, FusionMap};

/// A failure that ends the run with exit status 1.
#[derive(Debug)]
pub struct LoadError(pub String);

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Tables named on the command line plus the bundled corpus.
pub struct Loader {
    force: bool,
    extra: BTreeMap<String, CharacterTable>,
}

impl Loader {
    pub fn new(force: bool, with_tables: &[String]) -> Result<Self, LoadError> {
        let mut loader = Loader {
            force,
            extra: BTreeMap::new(),
        };
        for path in with_tables {
            let t = loader.table_from_file(Path::new(path))?;
            loader.extra.insert(t.name().to_string(), t);
        }
        Ok(loader)
    }

    fn table_from_file(&self, path: &Path) -> Result<CharacterTable, LoadError> {
        let src =
            fs::read_to_string(path).map_err(|e| LoadError(format!("{}: {e}", path.display())))?;
        let t = parse_table(&src).map_err(|e| LoadError(format!("{}: {e}", path.display())))?;
        if !self.force {
            let violations = t.validate();
            if let Some(v) = violations.first() {
                return Err(LoadError(format!(
                    "{}: table {} fails validation ({} problems, first: {}); use --force to load it anyway",
                    path.display(),
                    t.name(),
                    violations.len(),
                    v
                )));
            }
        }
        Ok(t)
    }

    /// Reads without the validation gate (for `validate` itself).
    pub fn table_unchecked(arg: &str) -> Result<CharacterTable, LoadError> {
        Loader {
            force: true,
            extra: BTreeMap::new(),
        }
        .table(arg)
    }

    pub fn table(&self, arg: &str) -> Result<CharacterTable, LoadError> {
        let path = Path::new(arg);
        if path.is_file() {
            return self.table_from_file(path);
        }
        self.by_name(arg)
            .ok_or_else(|| LoadError(format!("{arg}: no such file or bundled table")))
    }

    fn by_name(&self, name: &str) -> Option<CharacterTable> {
        self.extra
            .get(name)
            .cloned()
            .or_else(|| corpus::table(name))
    }

    /// A subgroup fusion into `target`: a fusion file whose source table is
    /// bundled or given with `--with-table`, or the name of a bundled
    /// source table.
    pub fn subgroup(
        &self,
        arg: &str,
        target: &CharacterTable,
    ) -> Result<(CharacterTable, FusionMap), LoadError> {
        let path = Path::new(arg);
        let f = if path.is_file() {
            let src = fs::read_to_string(path).map_err(|e| LoadError(format!("{arg}: {e}")))?;
            parse_fusion(&src).map_err(|e| LoadError(format!("{arg}: {e}")))?
        } else {
            corpus::fusion(arg, target.name()).ok_or_else(|| {
                LoadError(format!(
                    "{arg}: no such file or bundled fusion into {}",
                    target.name()
                ))
            })?
        };
        if f.kind() != FusionKind::Subgroup {
            return Err(LoadError(format!("{arg}: not a subgroup fusion")));
        }
        if f.target() != target.name() {
            return Err(LoadError(format!(
                "{arg}: fusion targets {}, not {}",
                f.target(),
                target.name()
            )));
        }
        let h = self.by_name(f.source()).ok_or_else(|| {
            LoadError(format!(
                "{arg}: source table {} is unknown; pass it with --with-table",
                f.source()
            ))
        })?;
        let problems = f.check(&h, target);
        if let Some(p) = problems.first() {
            return Err(LoadError(format!("{arg}: inconsistent fusion: {p}")));
        }
        Ok((h, f))
    }
}
