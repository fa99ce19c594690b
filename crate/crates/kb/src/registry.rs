//! A directory of class files with a name index.
//!
//! The index (`index.json`) maps each class name to its file inside the
//! directory. Every write goes through a temporary file and a rename.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use oodn_core::AnyClass;
use serde::{Deserialize, Serialize};

use crate::error::KbError;
use crate::format::{self, write_atomic};

const INDEX_FILE: &str = "index.json";
const INDEX_FORMAT: &str = "oodn-registry/1";

#[derive(Serialize, Deserialize)]
struct Index {
    format: String,
    classes: BTreeMap<String, String>,
}

#[derive(Debug)]
pub struct Registry {
    dir: PathBuf,
    classes: BTreeMap<String, String>,
}

impl Registry {
    /// Opens the registry in `dir`, creating an empty one if the directory
    /// has no index yet. Every indexed file is loaded and validated.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, KbError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| KbError::io(&dir, e))?;
        let index_path = dir.join(INDEX_FILE);
        let classes = if index_path.exists() {
            let text = fs::read_to_string(&index_path).map_err(|e| KbError::io(&index_path, e))?;
            let index: Index = serde_json::from_str(&text).map_err(|e| KbError::Parse {
                file: Some(index_path.clone()),
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            if index.format != INDEX_FORMAT {
                return Err(KbError::Schema {
                    file: Some(index_path),
                    field: "format".into(),
                    message: format!("unsupported registry format `{}`", index.format),
                });
            }
            index.classes
        } else {
            BTreeMap::new()
        };
        let reg = Registry { dir, classes };
        reg.verify()?;
        Ok(reg)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Class names in sorted order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.classes.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.classes.contains_key(name)
    }

    pub fn path_of(&self, name: &str) -> Option<PathBuf> {
        self.classes.get(name).map(|f| self.dir.join(f))
    }

    pub fn get(&self, name: &str) -> Result<AnyClass, KbError> {
        let path = self
            .path_of(name)
            .ok_or_else(|| KbError::UnknownName(name.to_owned()))?;
        format::load(path)
    }

    /// Stores `c` as `<name>.cls`. Names must be unique.
    pub fn insert(&mut self, c: &AnyClass) -> Result<PathBuf, KbError> {
        let name = c.name().to_owned();
        if self.classes.contains_key(&name) {
            return Err(KbError::DuplicateName(name));
        }
        let file = format!("{name}.cls");
        let path = self.dir.join(&file);
        format::save(c, &path)?;
        self.classes.insert(name, file);
        self.write_index()?;
        Ok(path)
    }

    pub fn remove(&mut self, name: &str) -> Result<AnyClass, KbError> {
        let class = self.get(name)?;
        let file = self.classes.remove(name).expect("checked by get");
        self.write_index()?;
        let path = self.dir.join(file);
        fs::remove_file(&path).map_err(|e| KbError::io(&path, e))?;
        Ok(class)
    }

    /// Every indexed file parses, validates and carries its indexed name.
    pub fn verify(&self) -> Result<(), KbError> {
        for (name, file) in &self.classes {
            let path = self.dir.join(file);
            let class = format::load(&path)?;
            if class.name() != name {
                return Err(KbError::Schema {
                    file: Some(path),
                    field: "name".into(),
                    message: format!("indexed as `{name}` but named `{}`", class.name()),
                });
            }
        }
        Ok(())
    }

    fn write_index(&self) -> Result<(), KbError> {
        let index = Index {
            format: INDEX_FORMAT.into(),
            classes: self.classes.clone(),
        };
        let text = format::pretty(&index);
        write_atomic(&self.dir.join(INDEX_FILE), text.as_bytes())
    }
}
