"""Line-oriented ``key: value`` reports for verdicts and Lie algebras."""

from symbolic.exactnum import deepest_tower, describe_tower, format_scalar


def _value(value):
    if value is None:
        return "unknown"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def format_matrix(matrix, indent="  "):
    rows = [[format_scalar(x) for x in matrix.row(i)] for i in range(matrix.rows)]
    width = max((len(x) for row in rows for x in row), default=1)
    return [indent + "[" + "  ".join(x.rjust(width) for x in row) + "]" for row in rows]


def render_verdict(verdict, names=None):
    lines = [
        f"status: {verdict.status.value if verdict.status else 'unknown'}",
        f"torus_dim: {_value(verdict.torus_dim)}",
        f"variety_dim: {_value(verdict.variety_dim)}",
        f"complexity: {_value(verdict.complexity)}",
        f"unital_excluded: {_value(verdict.unital_excluded)}",
        f"lie_dim: {_value(verdict.lie_dim)}",
        f"cartan_dim: {_value(verdict.cartan_dim)}",
        f"toral_dim: {_value(verdict.toral_dim)}",
        f"nilpotent_dim: {_value(verdict.nilpotent_dim)}",
    ]
    if verdict.witness:
        lines.append(f"witness: {verdict.witness}")
    if verdict.transform is not None:
        if verdict.affine_part is not None:
            lines.append("substitution: x -> L*x + b")
            lines.append("translation: " + " ".join(format_scalar(x) for x in verdict.affine_part.translation))
            lines.append("linear:")
            lines.extend(format_matrix(verdict.affine_part.linear))
        else:
            lines.append("substitution: x -> P*x")
        if names:
            lines.append("variables: " + " ".join(names))
        lines.append("transform:")
        lines.extend(format_matrix(verdict.transform))
    if verdict.transformed is not None and verdict.is_toric:
        lines.append("transformed:")
        lines.extend(f"  {g}" for g in verdict.transformed.generators)
    if verdict.diagnostics:
        lines.append("diagnostics:")
        lines.extend(f"  - {note}" for note in verdict.diagnostics)
    towers = verdict.towers
    if towers:
        lines.append("towers:")
        lines.extend(f"  {line}" for line in towers)
    return "\n".join(lines)


def render_lie_algebra(algebra, show_basis=True):
    lines = [f"dim_g: {algebra.dim}", f"ambient: {algebra.n}"]
    if show_basis:
        lines.append("basis:")
        for index, member in enumerate(algebra.basis):
            lines.append(f"  b{index + 1}:")
            lines.extend(format_matrix(member, indent="    "))
    return "\n".join(lines)


def render_torus(algebra, decomposition, show_basis=False):
    lines = [
        f"dim_g: {algebra.dim}",
        f"cartan_dim: {decomposition.cartan_dim}",
        f"toral_dim: {decomposition.toral_dim}",
        f"nilpotent_dim: {decomposition.nilpotent_dim}",
    ]
    if show_basis:
        lines.append("toral_basis:")
        for index, member in enumerate(decomposition.toral.basis):
            lines.append(f"  t{index + 1}:")
            lines.extend(format_matrix(member, indent="    "))
        towers = describe_tower(deepest_tower([x for m in decomposition.toral.basis for x in m.entries()]))
        if towers:
            lines.append("towers:")
            lines.extend(f"  {line}" for line in towers)
    return "\n".join(lines)
