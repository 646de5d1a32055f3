use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliError;

/// Settings that determine an output file's content. Thread count and output
/// location are left out so they cannot change the bytes written.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunConfig {
    pub subcommand: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub to: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bootstrap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub benchmark: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hex_bins: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub procedures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl RunConfig {
    /// Comment lines opening every output file, without the comment marker.
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("agree {}", env!("CARGO_PKG_VERSION")),
            format!("config: {}", serde_json::to_string(self).expect("config serialises")),
        ];
        if let Some(seed) = self.seed {
            out.push(format!("seed: {seed}"));
        }
        out
    }

    pub fn write_csv_header<W: Write>(&self, w: &mut W, notes: &[&str]) -> std::io::Result<()> {
        for line in self.lines().iter().map(String::as_str).chain(notes.iter().copied()) {
            writeln!(w, "# {line}")?;
        }
        Ok(())
    }
}

/// Output written to a sibling temporary file and renamed into place on
/// [`OutputFile::commit`], so a rerun never leaves a half-written file.
pub struct OutputFile {
    path: PathBuf,
    tmp: PathBuf,
    writer: BufWriter<File>,
}

impl OutputFile {
    pub fn create(path: &Path) -> Result<Self, CliError> {
        let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
        name.push(".partial");
        let tmp = path.with_file_name(name);
        let file = File::create(&tmp).map_err(CliError::io(path))?;
        Ok(OutputFile { path: path.to_path_buf(), tmp, writer: BufWriter::new(file) })
    }

    pub fn writer(&mut self) -> &mut BufWriter<File> {
        &mut self.writer
    }

    pub fn commit(self) -> Result<(), CliError> {
        let OutputFile { path, tmp, writer } = self;
        let file = writer.into_inner().map_err(|e| CliError::Io { path: path.clone(), source: e.into_error() })?;
        file.sync_all().map_err(CliError::io(&path))?;
        drop(file);
        fs::rename(&tmp, &path).map_err(CliError::io(&path))
    }
}
