//! CSV output for radial functions and frames.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use super::frame::KatoFrame;
use super::function::RadialFunction;

/// One row of a frame manifest.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameManifestEntry {
    pub t: f64,
    pub file: PathBuf,
    pub beta: f64,
}

/// Two-column `r,value` CSV preceded by `#` comment lines.
pub fn write_function_csv(mut w: impl Write, f: &RadialFunction, comments: &[&str]) -> io::Result<()> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    writeln!(w, "r,value")?;
    for (r, v) in f.grid().nodes().iter().zip(f.values()) {
        writeln!(w, "{r:.17e},{v:.17e}")?;
    }
    Ok(())
}

/// Writes `prefix_NNNN.csv` per snapshot and `prefix_manifest.csv` listing
/// `t,file,beta` into `dir`. Returns the paths written, manifest last.
pub fn write_frame_csvs(dir: &Path, prefix: &str, frame: &KatoFrame) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::with_capacity(frame.len() + 1);
    let mut manifest = String::from("# snapshot files of u(t); beta is the Kato weight exponent\nt,file,beta\n");
    for (j, (t, u)) in frame.times().iter().zip(frame.snapshots()).enumerate() {
        let name = format!("{prefix}_{j:04}.csv");
        let path = dir.join(&name);
        let t_line = format!("t = {t:.17e}");
        write_function_csv(io::BufWriter::new(fs::File::create(&path)?), u, &[&t_line])?;
        manifest.push_str(&format!("{t:.17e},{name},{:.17e}\n", frame.beta()));
        written.push(path);
    }
    let mpath = dir.join(format!("{prefix}_manifest.csv"));
    fs::write(&mpath, manifest)?;
    written.push(mpath);
    Ok(written)
}
