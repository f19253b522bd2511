from django.db import models


class ScreeningRecord(models.Model):
    """One screened graph: model dimension, stabilizer data and the toric verdict."""

    graph_label = models.CharField(max_length=100, db_index=True, help_text="Named graph or inline form")
    vertex_count = models.PositiveSmallIntegerField()
    edges = models.JSONField(default=list, help_text="Edge list as [i, j] pairs")
    saturated = models.BooleanField(default=False, help_text="Principal-minor saturation applied")
    seed = models.BigIntegerField(default=0)

    dim_ci = models.IntegerField(null=True, blank=True, help_text="Krull dimension of the CI ideal")
    dim_model = models.IntegerField(null=True, blank=True, help_text="Krull dimension after saturation")
    lie_dim = models.PositiveIntegerField(null=True, blank=True)
    cartan_dim = models.PositiveIntegerField(null=True, blank=True)
    toral_dim = models.PositiveIntegerField(null=True, blank=True)
    nilpotent_dim = models.PositiveIntegerField(null=True, blank=True)

    status = models.CharField(max_length=32, blank=True)
    is_toric = models.BooleanField(null=True)
    diagnostics = models.JSONField(default=list, blank=True)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ["-created_at"]
        indexes = [models.Index(fields=["graph_label", "saturated"])]

    def __str__(self):
        return f"{self.graph_label} ({self.status or 'partial'})"

    @property
    def complexity(self):
        if self.dim_model is None or self.toral_dim is None:
            return None
        return max(self.dim_model - self.toral_dim, 0)

    @classmethod
    def from_row(cls, row):
        return cls.objects.create(
            graph_label=row.label,
            vertex_count=row.p,
            edges=row.edges,
            saturated=row.saturated,
            seed=row.seed,
            dim_ci=row.dim_ci,
            dim_model=row.dim_model,
            lie_dim=row.lie_dim,
            cartan_dim=row.cartan_dim,
            toral_dim=row.toral_dim,
            nilpotent_dim=row.nilpotent_dim,
            status=row.status or "",
            is_toric=row.toric,
            diagnostics=row.diagnostics,
        )
