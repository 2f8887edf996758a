//! The shipped descriptors: groups, complexes and fields.
//!
//! The files under `corpus/` are compiled into the binary. Setting
//! `TAMEARITH_CORPUS` to a directory with the same `groups/`, `complexes/`
//! and `fields/` layout replaces them.

use std::fs;
use std::path::{Path, PathBuf};

use tamearith_core::groupchar::FiniteGroup;

use crate::load::{self, InputError};
use crate::schema::{ComplexFile, FieldFile, GroupFile};

pub const ENV_VAR: &str = "TAMEARITH_CORPUS";

macro_rules! bundled {
    ($($dir:literal / $name:literal),* $(,)?) => {
        &[$(( $dir, concat!($name, ".json"), include_str!(concat!("../corpus/", $dir, "/", $name, ".json")) )),*]
    };
}

const BUNDLED: &[(&str, &str, &str)] = bundled![
    "groups" / "C2",
    "groups" / "C2xC2",
    "groups" / "C3",
    "groups" / "C4",
    "groups" / "C6",
    "groups" / "D4",
    "groups" / "Q8",
    "groups" / "S3",
    "complexes" / "acyclic_c2",
    "complexes" / "rescaled_s3",
    "complexes" / "times_five_c4",
    "fields" / "Q",
    "fields" / "Q_zeta5",
    "fields" / "Q_zeta7",
    "fields" / "Q_zeta8",
    "fields" / "S3_cubic",
];

/// A parsed descriptor with the name it was loaded under.
#[derive(Clone, Debug)]
pub struct Entry<T> {
    pub path: String,
    pub file: T,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub source: String,
    pub groups: Vec<(String, FiniteGroup)>,
    pub complexes: Vec<Entry<ComplexFile>>,
    pub fields: Vec<Entry<FieldFile>>,
}

impl Corpus {
    /// The directory named by `TAMEARITH_CORPUS`, or the bundled files.
    pub fn from_env() -> Result<Self, InputError> {
        match std::env::var_os(ENV_VAR) {
            Some(dir) if !dir.is_empty() => Self::from_dir(Path::new(&dir)),
            _ => Self::bundled(),
        }
    }

    pub fn bundled() -> Result<Self, InputError> {
        let files = BUNDLED.iter().map(|(dir, name, text)| (dir.to_string(), format!("<bundled>/{dir}/{name}"), text.to_string()));
        Self::assemble("bundled".into(), files)
    }

    pub fn from_dir(dir: &Path) -> Result<Self, InputError> {
        let mut files = Vec::new();
        for sub in ["groups", "complexes", "fields"] {
            let d = dir.join(sub);
            let mut paths: Vec<PathBuf> = match fs::read_dir(&d) {
                Ok(it) => it
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "json"))
                    .collect(),
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => continue,
                Err(source) => return Err(InputError::Io { path: d.display().to_string(), source }),
            };
            paths.sort();
            for p in paths {
                let name = p.display().to_string();
                let text = fs::read_to_string(&p).map_err(|source| InputError::Io { path: name.clone(), source })?;
                files.push((sub.to_string(), name, text));
            }
        }
        Self::assemble(dir.display().to_string(), files.into_iter())
    }

    fn assemble(source: String, files: impl Iterator<Item = (String, String, String)>) -> Result<Self, InputError> {
        let mut c = Corpus { source, groups: Vec::new(), complexes: Vec::new(), fields: Vec::new() };
        for (dir, path, text) in files {
            match dir.as_str() {
                "groups" => {
                    let f: GroupFile = load::parse_json(&path, &text)?;
                    let g = load::load_group(&path, &f)?;
                    c.groups.push((f.name, g));
                }
                "complexes" => {
                    let file: ComplexFile = load::parse_json(&path, &text)?;
                    c.complexes.push(Entry { path, file });
                }
                _ => {
                    let file: FieldFile = load::parse_json(&path, &text)?;
                    c.fields.push(Entry { path, file });
                }
            }
        }
        if c.groups.is_empty() {
            return Err(InputError::invalid(&c.source, "groups", "the corpus contains no groups"));
        }
        Ok(c)
    }

    pub fn group(&self, name: &str) -> Option<&FiniteGroup> {
        self.groups.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    pub fn field(&self, name: &str) -> Option<&Entry<FieldFile>> {
        self.fields.iter().find(|e| e.file.name == name)
    }

    pub fn complex(&self, name: &str) -> Option<&Entry<ComplexFile>> {
        self.complexes.iter().find(|e| e.file.name == name)
    }
}

/// Whether some inertia group has order divisible by its residue
/// characteristic. Such fields are used through their Galois data only.
pub fn is_wild(file: &FieldFile) -> bool {
    file.ramification.iter().any(|r| r.inertia.len() as u64 % r.p == 0)
}
