from django.contrib import admin

from graphical.models import ScreeningRecord


@admin.register(ScreeningRecord)
class ScreeningRecordAdmin(admin.ModelAdmin):
    list_display = [
        "graph_label",
        "vertex_count",
        "saturated",
        "dim_model",
        "lie_dim",
        "toral_dim",
        "complexity_display",
        "status",
        "is_toric",
        "created_at",
    ]
    list_filter = ["vertex_count", "saturated", "is_toric", "status"]
    search_fields = ["graph_label"]
    readonly_fields = ["created_at", "diagnostics"]

    fieldsets = (
        ("Graph", {"fields": ("graph_label", "vertex_count", "edges", "saturated", "seed")}),
        (
            "Dimensions",
            {"fields": ("dim_ci", "dim_model", "lie_dim", "cartan_dim", "toral_dim", "nilpotent_dim")},
        ),
        ("Verdict", {"fields": ("status", "is_toric", "diagnostics", "created_at")}),
    )

    def complexity_display(self, obj):
        value = obj.complexity
        return "-" if value is None else value

    complexity_display.short_description = "Complexity"
