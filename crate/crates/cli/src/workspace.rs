use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use ttd_core::io::{ComplexDocument, HomeoDocument, ModelDocument};

use crate::error::{CliError, Result};

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses a document, prefixing errors with the file name.
pub fn parse<T>(path: &Path, parse: impl Fn(&str) -> ttd_core::Result<T>) -> Result<T> {
    let text = read_file(path)?;
    parse(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// A directory of documents: `complexes/`, `homeos/` and `models/`, each
/// holding `*.json` files. Names are unique per kind and every model
/// reference must resolve.
#[derive(Debug, Default)]
pub struct Workspace {
    pub root: PathBuf,
    pub complexes: BTreeMap<String, ComplexDocument>,
    pub homeos: BTreeMap<String, HomeoDocument>,
    pub models: BTreeMap<String, ModelDocument>,
}

fn json_files(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.exists() {
        return Ok(Vec::new());
    }
    let entries = fs::read_dir(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry
            .map_err(|source| CliError::Io {
                path: dir.to_path_buf(),
                source,
            })?
            .path();
        if path.extension().is_some_and(|e| e == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn insert<T>(map: &mut BTreeMap<String, T>, kind: &str, name: String, doc: T, path: &Path) -> Result<()> {
    if map.contains_key(&name) {
        return Err(CliError::input(format!(
            "{}: duplicate {kind} name {name:?}",
            path.display()
        )));
    }
    map.insert(name, doc);
    Ok(())
}

impl Workspace {
    pub fn load(root: &Path) -> Result<Self> {
        if !root.is_dir() {
            return Err(CliError::input(format!(
                "{}: not a workspace directory",
                root.display()
            )));
        }
        let mut ws = Workspace {
            root: root.to_path_buf(),
            ..Default::default()
        };
        for path in json_files(&root.join("complexes"))? {
            let doc = parse(&path, ComplexDocument::from_json)?;
            insert(&mut ws.complexes, "complex", doc.name.clone(), doc, &path)?;
        }
        for path in json_files(&root.join("homeos"))? {
            let doc = parse(&path, HomeoDocument::from_json)?;
            insert(&mut ws.homeos, "homeo", doc.name.clone(), doc, &path)?;
        }
        for path in json_files(&root.join("models"))? {
            let doc = parse(&path, ModelDocument::from_json)?;
            if !ws.complexes.contains_key(&doc.complex) {
                return Err(CliError::input(format!(
                    "{}: unknown complex {:?}",
                    path.display(),
                    doc.complex
                )));
            }
            if let Some(h) = doc.homeos.iter().find(|h| !ws.homeos.contains_key(*h)) {
                return Err(CliError::input(format!("{}: unknown homeo {h:?}", path.display())));
            }
            insert(&mut ws.models, "model", doc.name.clone(), doc, &path)?;
        }
        Ok(ws)
    }

    pub fn complex(&self, name: &str) -> Result<&ComplexDocument> {
        self.complexes
            .get(name)
            .ok_or_else(|| CliError::input(format!("workspace has no complex {name:?}")))
    }

    pub fn model(&self, name: &str) -> Result<&ModelDocument> {
        self.models
            .get(name)
            .ok_or_else(|| CliError::input(format!("workspace has no model {name:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ttd_core::corpus;

    fn write(dir: &Path, kind: &str, name: &str, text: String) {
        fs::create_dir_all(dir.join(kind)).unwrap();
        fs::write(dir.join(kind).join(format!("{name}.json")), text).unwrap();
    }

    #[test]
    fn loads_and_resolves() {
        let dir = tempfile::tempdir().unwrap();
        write(
            dir.path(),
            "complexes",
            "oct",
            serde_json::to_string(&corpus::octahedron()).unwrap(),
        );
        write(
            dir.path(),
            "homeos",
            "a",
            serde_json::to_string(&corpus::antipodal_homeo()).unwrap(),
        );
        let model = ModelDocument {
            name: "m".into(),
            complex: "octahedron".into(),
            homeos: vec!["antipodal".into()],
            bound: 1,
            depth: None,
        };
        write(dir.path(), "models", "m", serde_json::to_string(&model).unwrap());
        let ws = Workspace::load(dir.path()).unwrap();
        assert_eq!(ws.model("m").unwrap().homeos, vec!["antipodal".to_string()]);
        assert!(ws.complex("nope").is_err());
    }

    #[test]
    fn rejects_dangling_references_and_duplicates() {
        let dir = tempfile::tempdir().unwrap();
        write(
            dir.path(),
            "complexes",
            "a",
            serde_json::to_string(&corpus::sphere()).unwrap(),
        );
        write(
            dir.path(),
            "complexes",
            "b",
            serde_json::to_string(&corpus::sphere()).unwrap(),
        );
        let err = Workspace::load(dir.path()).unwrap_err();
        assert!(err.to_string().contains("duplicate"));
        fs::remove_file(dir.path().join("complexes/b.json")).unwrap();
        let model = ModelDocument {
            name: "m".into(),
            complex: "S2".into(),
            homeos: vec!["missing".into()],
            bound: 0,
            depth: None,
        };
        write(dir.path(), "models", "m", serde_json::to_string(&model).unwrap());
        let err = Workspace::load(dir.path()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("missing"));
    }
}
