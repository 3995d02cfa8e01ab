"""
Serializers de configuración y resultados del AG.
"""
from rest_framework import serializers

from core.exceptions import ArgumentError
from .domain import GAConfig


class GAConfigSerializer(serializers.Serializer):
    population_size = serializers.IntegerField(required=False, default=50, min_value=2)
    generations = serializers.IntegerField(required=False, default=100, min_value=1)
    crossover_rate = serializers.FloatField(required=False, default=0.8, min_value=0.0, max_value=1.0)
    mutation_rate = serializers.FloatField(
        required=False, allow_null=True, default=None, min_value=0.0, max_value=1.0,
    )
    tournament_size = serializers.IntegerField(required=False, default=3, min_value=1)
    elitism = serializers.IntegerField(required=False, default=2, min_value=0)
    alpha = serializers.FloatField(required=False, default=0.01, min_value=0.0)
    fitness_folds = serializers.IntegerField(required=False, default=5, min_value=2)
    seed = serializers.IntegerField(required=False, allow_null=True, default=None, min_value=0)

    def validate(self, attrs):
        """
        Restricciones cruzadas: elitism < population_size y
        tournament_size ≤ population_size.
        """
        errors = {}
        if attrs['elitism'] >= attrs['population_size']:
            errors['elitism'] = "debe ser menor que population_size"
        if attrs['tournament_size'] > attrs['population_size']:
            errors['tournament_size'] = "no puede superar population_size"
        if errors:
            raise serializers.ValidationError(errors)
        return attrs

    def to_representation(self, instance):
        if isinstance(instance, GAConfig):
            return instance.to_dict()
        return super().to_representation(instance)

    def create(self, validated_data):
        data = dict(validated_data)
        if data.get('seed') is None:
            data['seed'] = self.context.get('default_seed', 0)
        try:
            return GAConfig(**data)
        except ArgumentError as exc:
            raise serializers.ValidationError(exc.message)


class GAResultSerializer(serializers.Serializer):
    """Máscara como lista ordenada de índices; historia como matriz de 2 columnas."""
    best_mask = serializers.ListField(child=serializers.IntegerField(min_value=0))
    best_fitness = serializers.FloatField()
    history = serializers.ListField(child=serializers.ListField(child=serializers.FloatField()))
    evaluations = serializers.IntegerField(min_value=0)
    selection_frequency = serializers.ListField(child=serializers.FloatField(min_value=0.0, max_value=1.0))
    flagged = serializers.BooleanField()

    def to_representation(self, instance):
        if hasattr(instance, 'to_dict'):
            instance = instance.to_dict()
        return super().to_representation(instance)
