"""
URL configuration for equideg project.

Every app exposes its analyses under ``/api/`` through a DRF router.
"""
from django.urls import path, include

urlpatterns = [
    path('api/', include('equideg.apps.bessel.urls')),
    path('api/', include('equideg.apps.burnside.urls')),
    path('api/', include('equideg.apps.degree.urls')),
    path('api/', include('equideg.apps.bifurcation.urls')),
]
