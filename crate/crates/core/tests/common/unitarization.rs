//! Closed form of the connected cluster element.

use std::f64::consts::PI;

use wedgebench::unitarization::ConnectedPhase;

/// Closed form of the connected element for Gaussian kernel and packets.
pub fn cluster_oracle(p: &ConnectedPhase, a: f64) -> f64 {
    let (sg, sp) = (p.kernel_width, p.packet_width);
    let (p1, p2) = p.packet_momenta;
    let big_a = 1.0 / (2.0 * sg * sg) + 1.0 / (sp * sp);
    let b0 = (p1 - p2) / (sp * sp);
    p.coupling * PI / big_a * (2.0 * PI).sqrt() * sp
        * ((b0 * b0 - a * a) / (2.0 * big_a) - (p1 - p2).powi(2) / (2.0 * sp * sp)).exp()
}
