"""Comparison helpers shared by several test modules."""
from fgcoords.surface import extend_side_map


def isomorphisms(src, dst):
    """All orientation-preserving isomorphisms of gluings src -> dst, as side maps."""
    t0 = src.triangles[0]
    out = []
    for u in dst.triangles:
        for k in range(3):
            m = extend_side_map(src, dst, {(t0, 0): (u, k)})
            if m is not None:
                out.append(m)
    return out


def carried(coords, side_map, chart):
    """Push coordinates along a side map onto ``chart`` as plain dicts."""
    tp = {side_map[(t, 0)][0]: v for t, v in coords.triangle_params.items()}
    ep = {side_map[k]: v for k, v in coords.edge_params.items()}
    return tp, ep


def same_up_to_relabeling(c1, c2, keep_edge_names=False):
    """True if some isomorphism of charts carries c1 exactly onto c2."""
    for m in isomorphisms(c1.chart, c2.chart):
        if keep_edge_names and any(c2.chart.edge_at(m[k]) != c1.chart.edge_at(k) for k in m):
            continue
        tp, ep = carried(c1, m, c2.chart)
        if tp == c2.triangle_params and ep == c2.edge_params:
            return True
    return False
