"""Deterministic SVG drawings of the weighted polyhedron for d = 2."""

from __future__ import annotations

from fractions import Fraction

from .umbrella import ToricMatrix, ValidationError, as_weights, compute_umbrella

SIZE = 480
MARGIN = 40


def _hull(points):
    """Andrew's monotone chain on exact points, counter-clockwise."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _fmt(x) -> str:
    return f"{float(x):.3f}"


def render_svg(A, L) -> str:
    A = ToricMatrix.of(A, strict=False)
    if A.d != 2:
        raise ValidationError("plot-needs-d2", "plots are only available for d = 2")
    L = as_weights(L, A.n)
    umb = compute_umbrella(A, L)
    cols = A.columns

    scaled = {j: (Fraction(a[0]) / L[j], Fraction(a[1]) / L[j]) for j, a in enumerate(cols) if L[j] != 0}
    finite = [scaled[j] for j in scaled if L[j] > 0] + [(Fraction(0), Fraction(0))]
    raw = [tuple(map(Fraction, a)) for a in cols]
    extent = max([abs(x) for p in list(scaled.values()) + raw for x in p] + [Fraction(1)])
    reach = extent * Fraction(3, 2)

    def far(j):
        a = cols[j]
        norm = max(abs(a[0]), abs(a[1]))
        return (Fraction(a[0]) * reach / norm, Fraction(a[1]) * reach / norm)

    rays = [j for j in range(A.n) if L[j] == 0]
    hull = _hull(finite + [(p[0] + far(j)[0], p[1] + far(j)[1]) for p in finite for j in rays])

    scale = Fraction(SIZE - 2 * MARGIN, 2) / reach
    cx = cy = Fraction(SIZE, 2)

    def X(p):
        return _fmt(cx + p[0] * scale)

    def Y(p):
        return _fmt(cy - p[1] * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<line x1="{MARGIN}" y1="{_fmt(cy)}" x2="{SIZE - MARGIN}" y2="{_fmt(cy)}" stroke="#bbbbbb"/>',
        f'<line x1="{_fmt(cx)}" y1="{MARGIN}" x2="{_fmt(cx)}" y2="{SIZE - MARGIN}" stroke="#bbbbbb"/>',
    ]
    if len(hull) >= 3:
        pts = " ".join(f"{X(p)},{Y(p)}" for p in hull)
        out.append(f'<polygon points="{pts}" fill="#dde8f5" stroke="none"/>')
    for j in rays:
        out.append(
            f'<line x1="{X((0, 0))}" y1="{Y((0, 0))}" x2="{X(far(j))}" y2="{Y(far(j))}" '
            f'stroke="#555555" stroke-dasharray="4,3"/>'
        )
    for f in umb.facets:
        ends = [scaled[j] for j in f.members if j in scaled]
        for j in f.members:
            if L[j] == 0 and ends:
                base = max(ends)
                d = far(j)
                ends.append((base[0] + d[0], base[1] + d[1]))
        if len(ends) >= 2:
            a, b = min(ends), max(ends)
            out.append(
                f'<line x1="{X(a)}" y1="{Y(a)}" x2="{X(b)}" y2="{Y(b)}" stroke="black" stroke-width="3"/>'
            )
    for j, a in enumerate(cols):
        out.append(f'<circle cx="{X(raw[j])}" cy="{Y(raw[j])}" r="2.5" fill="#999999"/>')
        if j in scaled:
            p = scaled[j]
            fill = "black" if L[j] > 0 else "white"
            out.append(f'<circle cx="{X(p)}" cy="{Y(p)}" r="4" fill="{fill}" stroke="black"/>')
            out.append(f'<text x="{_fmt(cx + p[0] * scale + 6)}" y="{_fmt(cy - p[1] * scale - 6)}" font-size="13">a{j + 1}</text>')
        else:
            out.append(f'<text x="{_fmt(cx + raw[j][0] * scale + 6)}" y="{_fmt(cy - raw[j][1] * scale - 6)}" font-size="13">a{j + 1}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
