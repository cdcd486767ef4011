//! A certificate written to JSON, read back, and caught after tampering.

use groupwit::group::construct::by_name;
use groupwit::witness::certificate::{from_json, to_json, CertificateJson};
use groupwit::witness::{verify_witness, witness_nilpotent};
use groupwit::Bounds;

fn main() -> groupwit::Result<()> {
    let b = Bounds::default();
    let (l1, l2) = (by_name("Z8")?, by_name("Z2xZ4")?);
    let cert = witness_nilpotent(&l1, &l2, &b)?;
    let text = to_json(&cert)?;
    println!("certificate: {} bytes", text.len());
    let back = from_json(&text, b.enumeration)?;
    println!("reloaded passes: {}", verify_witness(&back, [&l1, &l2], &b).complete());

    let mut j = CertificateJson::of(&cert);
    let n = j.kernel_iso.len();
    let (a, c) = (j.kernel_iso[1].1, j.kernel_iso[n - 1].1);
    j.kernel_iso[1].1 = c;
    j.kernel_iso[n - 1].1 = a;
    match j.load(b.enumeration) {
        Ok(bad) => {
            for c in verify_witness(&bad, [&l1, &l2], &b).failures() {
                println!("tampered: {} fails", c.name);
            }
        }
        Err(e) => println!("tampered: rejected on load ({e})"),
    }
    Ok(())
}
