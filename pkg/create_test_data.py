#!/usr/bin/env python
"""
Script pour créer des données de test pour SpectraBench
"""
import os

import django

# Configuration Django
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'SpectraBench.settings')
django.setup()

from django.contrib.auth import get_user_model

from bench.models import SearchRun
from bench.services import SearchService
from bench.star_forest import StarForest

User = get_user_model()

# (n, forêt, classe) : petites recherches, quelques secondes au total
RECHERCHES = [
    (6, '1,1', 'all'),
    (7, '2,1', 'all'),
    (7, '2,2', 'connected'),
    (8, '2,2', 'connected_bipartite'),
    (8, '1,1,1', 'bipartite'),
]


def create_test_data():
    print("🚀 Création des données de test pour SpectraBench...")

    print("👥 Création de l'utilisateur...")
    chercheur, created = User.objects.get_or_create(
        username='chercheur',
        defaults={'email': 'chercheur@spectrabench.local'},
    )
    if created:
        chercheur.set_password('password123')
        chercheur.save()

    print("🔎 Lancement des recherches...")
    for n, forest, graph_class in RECHERCHES:
        run = SearchService.lancer_recherche(n, StarForest.parse(forest), graph_class, user=chercheur)
        print(f"  • {run}")

    print(f"✅ {SearchRun.objects.count()} recherches archivées")


if __name__ == '__main__':
    create_test_data()
