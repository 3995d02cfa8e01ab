"""
Rutas del proyecto: solo el panel de administración para revisar el
historial de ejecuciones (`python manage.py runserver` y /admin/).
"""
from django.contrib import admin
from django.urls import path

urlpatterns = [
    path('admin/', admin.site.urls),
]
