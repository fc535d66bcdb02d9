//! Spectrum tables as CSV: `index,sigma,mode,parity,multiplicity`.

use std::io::Write;

use serde::Serialize;
use wlab_core::steklov::SteklovSpectrum;

#[derive(Serialize)]
struct Row {
    index: usize,
    sigma: String,
    mode: u32,
    parity: &'static str,
    multiplicity: u32,
}

/// One row per entry; `index` is the position of the entry's first
/// eigenvalue counted with multiplicity.
pub fn write_spectrum_csv<W: Write>(spec: &SteklovSpectrum, w: W) -> csv::Result<()> {
    let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    let mut index = 0;
    for e in &spec.entries {
        out.serialize(Row {
            index,
            sigma: format!("{:.16e}", e.sigma),
            mode: e.mode,
            parity: e.parity.as_str(),
            multiplicity: e.multiplicity,
        })?;
        index += e.multiplicity as usize;
    }
    out.flush()?;
    Ok(())
}
