# Generated by Django 5.2.4 on 2026-10-17 09:12

import django.core.validators
import django.db.models.deletion
import uuid
from django.conf import settings
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
        migrations.swappable_dependency(settings.AUTH_USER_MODEL),
    ]

    operations = [
        migrations.CreateModel(
            name='SearchRun',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('n', models.PositiveSmallIntegerField(validators=[django.core.validators.MinValueValidator(1)])),
                ('forest', models.CharField(help_text="Forêt d'étoiles au format k:d1,...,dk", max_length=50)),
                ('graph_class', models.CharField(choices=[('all', 'Tous les graphes'), ('connected', 'Connexes'), ('bipartite', 'Bipartis'), ('connected_bipartite', 'Bipartis connexes')], default='all', max_length=30)),
                ('count_enumerated', models.PositiveIntegerField(blank=True, help_text="Vide quand l'élagage ne visite que les graphes F-libres", null=True)),
                ('count_f_free', models.PositiveIntegerField(default=0)),
                ('max_rho', models.FloatField()),
                ('argmax', models.JSONField(default=list, help_text='graph6 des graphes maximisant ρ')),
                ('bound_value', models.FloatField(blank=True, null=True)),
                ('bound_applicable', models.BooleanField(default=False)),
                ('gap', models.FloatField(blank=True, null=True)),
                ('construction', models.CharField(blank=True, max_length=255, null=True)),
                ('construction_rho', models.FloatField(blank=True, null=True)),
                ('pruned', models.BooleanField(default=False)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('created_by', models.ForeignKey(blank=True, null=True, on_delete=django.db.models.deletion.SET_NULL, related_name='search_runs', to=settings.AUTH_USER_MODEL)),
            ],
            options={
                'verbose_name': 'Recherche extrémale',
                'verbose_name_plural': 'Recherches extrémales',
                'ordering': ['-created_at'],
            },
        ),
    ]
