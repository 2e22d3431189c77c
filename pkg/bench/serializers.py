from fractions import Fraction

from rest_framework import serializers

from .enumeration import GRAPH_CLASS_CHOICES
from .exceptions import BenchError
from .extremal import BOUND_KINDS, CONSTRUCTION_KINDS, THRESHOLD_KINDS, decimal_string
from .graphs import graph6_decode
from .models import SearchRun
from .star_forest import StarForest

# ========================
# CHAMPS
# ========================

class Graph6Field(serializers.Field):
    """Graphe transmis en graph6"""

    def to_internal_value(self, data):
        try:
            return graph6_decode(str(data))
        except BenchError as exc:
            raise serializers.ValidationError(exc.message)

    def to_representation(self, value):
        return str(value)


class StarForestField(serializers.Field):
    """Forêt d'étoiles "k:d1,...,dk" ou "d1,...,dk" """

    def to_internal_value(self, data):
        try:
            return StarForest.parse(str(data))
        except BenchError as exc:
            raise serializers.ValidationError(exc.message)

    def to_representation(self, value):
        return str(value)


class ExactValueField(serializers.Field):
    """Rationnel exact en chaîne décimale, flottant sinon"""

    def to_representation(self, value):
        if isinstance(value, Fraction):
            return decimal_string(value)
        return value


# ========================
# SERIALIZERS DE REQUÊTE
# ========================

class GraphQuerySerializer(serializers.Serializer):
    g6 = Graph6Field()


class SpectrumQuerySerializer(GraphQuerySerializer):
    matrix = serializers.ChoiceField(choices=['adjacency', 'signless'], default='adjacency')


class ContainmentQuerySerializer(GraphQuerySerializer):
    forest = StarForestField()


class ConstructQuerySerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=list(CONSTRUCTION_KINDS))
    params = serializers.CharField(help_text="Paramètres séparés par des virgules")


class BoundQuerySerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=list(BOUND_KINDS))
    n = serializers.IntegerField(min_value=1)
    k = serializers.IntegerField(required=False)
    d = serializers.IntegerField(required=False)
    forest = StarForestField(required=False)

    def validate(self, data):
        if data['kind'] in ('l21', 't12') and 'forest' not in data:
            raise serializers.ValidationError({'forest': 'Forêt requise pour cette borne'})
        if 'forest' not in data and 'k' not in data:
            raise serializers.ValidationError({'k': 'k ou forest requis'})
        if data['kind'] in ('t17', 'conj32') and 'forest' not in data and 'd' not in data:
            raise serializers.ValidationError({'d': 'd requis pour cette borne'})
        return data


class ThresholdQuerySerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=list(THRESHOLD_KINDS))
    forest = StarForestField()


class LancerRechercheSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=1)
    forest = StarForestField()
    graph_class = serializers.ChoiceField(choices=GRAPH_CLASS_CHOICES, default='all')
    workers = serializers.IntegerField(min_value=1, required=False)


# ========================
# SERIALIZERS DE RÉSULTAT
# ========================

class SpectrumResultSerializer(serializers.Serializer):
    eigenvalues = serializers.ListField(child=serializers.FloatField())
    method = serializers.CharField()
    max_residual = serializers.FloatField()
    sweeps = serializers.IntegerField()
    matrix = serializers.CharField()


class PerronDataSerializer(serializers.Serializer):
    rho = serializers.FloatField()
    vector = serializers.ListField(child=serializers.FloatField())
    min_entry = serializers.FloatField()
    residual = serializers.FloatField()
    method = serializers.CharField()


class PerronFloorSerializer(serializers.Serializer):
    holds = serializers.BooleanField()
    margin = serializers.FloatField()
    rho = serializers.FloatField()
    min_entry = serializers.FloatField()
    floor = serializers.FloatField()


class BoundReportSerializer(serializers.Serializer):
    name = serializers.CharField()
    params = serializers.DictField()
    value = ExactValueField()
    exact = serializers.BooleanField()
    attained_by = serializers.CharField(allow_null=True)
    note = serializers.CharField(allow_blank=True)
    numerator = serializers.SerializerMethodField()
    denominator = serializers.SerializerMethodField()

    def get_numerator(self, obj):
        return str(obj.value.numerator) if isinstance(obj.value, Fraction) else None

    def get_denominator(self, obj):
        return str(obj.value.denominator) if isinstance(obj.value, Fraction) else None


class SearchRunSerializer(serializers.ModelSerializer):
    created_by_username = serializers.CharField(source='created_by.username', read_only=True, default=None)
    sandwich_ok = serializers.BooleanField(read_only=True)

    class Meta:
        model = SearchRun
        fields = [
            'id', 'n', 'forest', 'graph_class', 'count_enumerated', 'count_f_free',
            'max_rho', 'argmax', 'bound_value', 'bound_applicable', 'gap',
            'construction', 'construction_rho', 'pruned', 'sandwich_ok',
            'created_by_username', 'created_at',
        ]
        read_only_fields = fields


class SearchRunListSerializer(serializers.ModelSerializer):
    """Version allégée pour les listes"""
    class Meta:
        model = SearchRun
        fields = ['id', 'n', 'forest', 'graph_class', 'max_rho', 'gap', 'bound_applicable', 'created_at']
