use std::fmt;

use super::{CharacterTable, TableError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FusionKind {
    /// Class fusion of a subgroup `H ≤ G`.
    Subgroup,
    /// Class map of an epimorphism `M.G → G`.
    Quotient,
}

impl FusionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FusionKind::Subgroup => "subgroup",
            FusionKind::Quotient => "quotient",
        }
    }
}

impl fmt::Display for FusionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A class map between two tables, identified by name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FusionMap {
    source: String,
    target: String,
    map: Vec<usize>,
    kind: FusionKind,
}

impl FusionMap {
    pub fn new(
        source: impl Into<String>,
        target: impl Into<String>,
        map: Vec<usize>,
        kind: FusionKind,
    ) -> Self {
        FusionMap {
            source: source.into(),
            target: target.into(),
            map,
            kind,
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn kind(&self) -> FusionKind {
        self.kind
    }

    pub(crate) fn expect_kind(&self, kind: FusionKind) -> Result<(), TableError> {
        if self.kind != kind {
            return Err(TableError::WrongFusionKind {
                expected: kind,
                found: self.kind,
            });
        }
        Ok(())
    }

    pub(crate) fn check_tables(&self, source: &str, target: &str) -> Result<(), TableError> {
        if self.source != source {
            return Err(TableError::TableMismatch {
                expected: self.source.clone(),
                found: source.to_string(),
            });
        }
        if self.target != target {
            return Err(TableError::TableMismatch {
                expected: self.target.clone(),
                found: target.to_string(),
            });
        }
        Ok(())
    }

    /// Arithmetic consistency against the two tables; empty when consistent.
    pub fn check(&self, source: &CharacterTable, target: &CharacterTable) -> Vec<String> {
        let mut out = Vec::new();
        if let Err(e) = self.check_tables(source.name(), target.name()) {
            out.push(e.to_string());
            return out;
        }
        if self.map.len() != source.num_classes() {
            out.push(format!(
                "map has {} entries for {} source classes",
                self.map.len(),
                source.num_classes()
            ));
            return out;
        }
        if let Some(&bad) = self.map.iter().find(|&&c| c >= target.num_classes()) {
            out.push(format!("image class {} out of range", bad + 1));
            return out;
        }
        match self.kind {
            FusionKind::Subgroup => {
                if !target.order().is_multiple_of(source.order()) {
                    out.push("subgroup order does not divide group order".into());
                }
                for (c, &img) in self.map.iter().enumerate() {
                    if source.element_order(c) != target.element_order(img) {
                        out.push(format!(
                            "class {} of order {} maps to class {} of order {}",
                            c + 1,
                            source.element_order(c),
                            img + 1,
                            target.element_order(img)
                        ));
                    }
                    if !target
                        .centralizer_order(img)
                        .is_multiple_of(source.centralizer_order(c))
                    {
                        out.push(format!(
                            "centralizer of class {} does not divide that of class {}",
                            c + 1,
                            img + 1
                        ));
                    }
                }
            }
            FusionKind::Quotient => {
                if !source.order().is_multiple_of(target.order()) {
                    out.push("quotient order does not divide group order".into());
                    return out;
                }
                let z = source.order() / target.order();
                let mut sizes = vec![0u128; target.num_classes()];
                for (c, &img) in self.map.iter().enumerate() {
                    if !source
                        .element_order(c)
                        .is_multiple_of(target.element_order(img))
                    {
                        out.push(format!(
                            "order of class {} does not divide order of class {}",
                            img + 1,
                            c + 1
                        ));
                    }
                    sizes[img] += source.class_size(c);
                }
                for (d, s) in sizes.iter().enumerate() {
                    if *s != z * target.class_size(d) {
                        out.push(format!(
                            "preimages of class {} have total size {s}, expected {}",
                            d + 1,
                            z * target.class_size(d)
                        ));
                    }
                }
            }
        }
        out
    }
}
