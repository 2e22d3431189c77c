from django.conf import settings
from django.core.validators import MinValueValidator
from django.db import models
import uuid

from .enumeration import GRAPH_CLASS_CHOICES, SearchRecord
from .star_forest import StarForest

# ========================
# RECHERCHES EXTRÉMALES
# ========================

class SearchRun(models.Model):
    """Recherche extrémale exhaustive archivée"""
    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    n = models.PositiveSmallIntegerField(validators=[MinValueValidator(1)])
    forest = models.CharField(max_length=50, help_text="Forêt d'étoiles au format k:d1,...,dk")
    graph_class = models.CharField(max_length=30, choices=GRAPH_CLASS_CHOICES, default='all')

    count_enumerated = models.PositiveIntegerField(null=True, blank=True, help_text="Vide quand l'élagage ne visite que les graphes F-libres")
    count_f_free = models.PositiveIntegerField(default=0)
    max_rho = models.FloatField()
    argmax = models.JSONField(default=list, help_text="graph6 des graphes maximisant ρ")

    # Comparaison avec la borne théorique
    bound_value = models.FloatField(null=True, blank=True)
    bound_applicable = models.BooleanField(default=False)
    gap = models.FloatField(null=True, blank=True)
    construction = models.CharField(max_length=255, null=True, blank=True)
    construction_rho = models.FloatField(null=True, blank=True)
    pruned = models.BooleanField(default=False)

    created_by = models.ForeignKey(
        settings.AUTH_USER_MODEL, null=True, blank=True,
        related_name='search_runs', on_delete=models.SET_NULL,
    )
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at']
        verbose_name = "Recherche extrémale"
        verbose_name_plural = "Recherches extrémales"

    def __str__(self):
        return f"n={self.n} {self.graph_class} F={self.forest} ρ={self.max_rho:.6f}"

    @property
    def sandwich_ok(self) -> bool:
        """ρ(construction) ≤ ρ max"""
        if self.construction_rho is None:
            return True
        return self.construction_rho <= self.max_rho + 1e-9

    @classmethod
    def from_record(cls, record: SearchRecord, user=None) -> 'SearchRun':
        return cls(
            n=record.n,
            forest=str(record.forest),
            graph_class=record.graph_class,
            count_enumerated=record.count_enumerated,
            count_f_free=record.count_f_free,
            max_rho=record.max_rho,
            argmax=list(record.argmax),
            bound_value=record.bound_value,
            bound_applicable=record.bound_applicable,
            gap=record.gap,
            construction=record.construction,
            construction_rho=record.construction_rho,
            pruned=record.pruned,
            created_by=user,
        )

    def to_record(self) -> SearchRecord:
        return SearchRecord(
            n=self.n,
            graph_class=self.graph_class,
            forest=StarForest.parse(self.forest),
            count_enumerated=self.count_enumerated,
            count_f_free=self.count_f_free,
            max_rho=self.max_rho,
            argmax=list(self.argmax),
            bound_value=self.bound_value,
            bound_applicable=self.bound_applicable,
            gap=self.gap,
            construction=self.construction,
            construction_rho=self.construction_rho,
            pruned=self.pruned,
        )
