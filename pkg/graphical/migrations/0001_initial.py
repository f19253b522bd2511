# Generated by Django 5.2.5 on 2026-10-19 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="ScreeningRecord",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                (
                    "graph_label",
                    models.CharField(
                        db_index=True,
                        help_text="Named graph or inline form",
                        max_length=100,
                    ),
                ),
                ("vertex_count", models.PositiveSmallIntegerField()),
                (
                    "edges",
                    models.JSONField(default=list, help_text="Edge list as [i, j] pairs"),
                ),
                (
                    "saturated",
                    models.BooleanField(
                        default=False, help_text="Principal-minor saturation applied"
                    ),
                ),
                ("seed", models.BigIntegerField(default=0)),
                (
                    "dim_ci",
                    models.IntegerField(
                        blank=True,
                        help_text="Krull dimension of the CI ideal",
                        null=True,
                    ),
                ),
                (
                    "dim_model",
                    models.IntegerField(
                        blank=True,
                        help_text="Krull dimension after saturation",
                        null=True,
                    ),
                ),
                ("lie_dim", models.PositiveIntegerField(blank=True, null=True)),
                ("cartan_dim", models.PositiveIntegerField(blank=True, null=True)),
                ("toral_dim", models.PositiveIntegerField(blank=True, null=True)),
                ("nilpotent_dim", models.PositiveIntegerField(blank=True, null=True)),
                ("status", models.CharField(blank=True, max_length=32)),
                ("is_toric", models.BooleanField(null=True)),
                ("diagnostics", models.JSONField(blank=True, default=list)),
                ("created_at", models.DateTimeField(auto_now_add=True)),
            ],
            options={
                "ordering": ["-created_at"],
                "indexes": [
                    models.Index(
                        fields=["graph_label", "saturated"],
                        name="graphical_s_graph_l_4c1d2e_idx",
                    )
                ],
            },
        ),
    ]
