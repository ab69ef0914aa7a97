"""Single-point corruptions of CLI artifacts, for checking that ``verify`` notices them."""

import random


def _body_lines(lines, prefix):
    return [i for i, ln in enumerate(lines) if ln.startswith(prefix)]


def mutate_edge_file(text: str, rnd: random.Random) -> str:
    """Drop one edge/cover line, or add a pair that is not present."""
    lines = text.splitlines()
    prefix = "e " if any(ln.startswith("e ") or ln.startswith("graph ") for ln in lines) else "cover "
    n = int(next(ln for ln in lines if ln.startswith(("graph ", "poset "))).split()[1])
    present = {tuple(map(int, lines[i].split()[1:])) for i in _body_lines(lines, prefix)}
    if present and rnd.random() < 0.5:
        idx = rnd.choice(_body_lines(lines, prefix))
        del lines[idx]
    else:
        while True:
            u, v = sorted(rnd.sample(range(1, n + 1), 2))
            if (u, v) not in present:
                break
        lines.append(f"{prefix}{u} {v}")
    return "\n".join(lines) + "\n"


def mutate_coordinate(text: str, rnd: random.Random) -> str:
    """Nudge one coordinate of one curve point by a nonzero amount."""
    lines = text.splitlines()
    points = [i for i, ln in enumerate(lines) if ln and not ln.startswith(("#", "curve"))]
    idx = rnd.choice(points)
    x, y = map(int, lines[idx].split())
    delta = rnd.choice((-3, -2, -1, 1, 2, 3))
    if rnd.random() < 0.5:
        y += delta
    else:
        x = x + delta if x + delta > 0 or x == 0 else x - delta
    lines[idx] = f"{x} {y}"
    return "\n".join(lines) + "\n"
